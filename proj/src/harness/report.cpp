#include "manet/harness/report.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "manet/errors.hpp"
#include "manet/harness/text.hpp"

namespace manet {

using text::format_double;

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "protocol",  "scenario_id",  "seed",          "n_nodes",   "pause_s",     "rate_pps",
      "sent",      "delivered",    "delivery_ratio", "mean_delay_ms", "transmissions_total", "drop_ttl",
      "drop_link", "drop_timeout", "drop_buffer",   "drop_perimeter"};
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string csv_row(const MetricsRow& r) {
  std::ostringstream os;
  os << r.labels.protocol << ',' << r.labels.scenario_id << ',' << r.labels.seed << ',' << r.labels.n_nodes << ','
     << format_double(r.labels.pause_s) << ',' << format_double(r.labels.rate_pps) << ',' << r.sent << ','
     << r.delivered << ',' << format_double(r.delivery_ratio) << ','
     << (r.mean_delay_ms ? format_double(*r.mean_delay_ms) : std::string()) << ',' << r.transmissions_total;
  for (auto d : r.drops) os << ',' << d;
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) os << csv_row(r) << '\n';
  if (!os) throw IoError("CSV write failed");
}

std::vector<MetricsRow> read_csv(std::istream& is) {
  std::vector<MetricsRow> rows;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> order;  // column position -> canonical index
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto fields = text::split(line, ',');
    if (order.empty()) {
      const auto& cols = csv_columns();
      if (fields.size() != cols.size()) throw ParseError(line_no, "expected " + std::to_string(cols.size()) + " columns");
      std::vector<bool> used(cols.size(), false);
      for (auto name : fields) {
        if (name == "throughput") name = "delivery_ratio";
        auto it = std::find(cols.begin(), cols.end(), name);
        if (it == cols.end()) throw ParseError(line_no, "unknown column '" + name + "'");
        const auto idx = static_cast<std::size_t>(it - cols.begin());
        if (used[idx]) throw ParseError(line_no, "duplicate column '" + name + "'");
        used[idx] = true;
        order.push_back(idx);
      }
      continue;
    }
    if (fields.size() != order.size()) throw ParseError(line_no, "wrong number of fields");
    std::vector<std::string> f(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) f[order[i]] = fields[i];
    try {
      MetricsRow r;
      r.labels.protocol = f[0];
      r.labels.scenario_id = f[1];
      r.labels.seed = text::parse_uint(f[2]);
      r.labels.n_nodes = static_cast<std::uint32_t>(text::parse_uint(f[3]));
      r.labels.pause_s = text::parse_double(f[4]);
      r.labels.rate_pps = text::parse_double(f[5]);
      r.sent = text::parse_uint(f[6]);
      r.delivered = text::parse_uint(f[7]);
      r.delivery_ratio = text::parse_double(f[8]);
      if (!f[9].empty()) r.mean_delay_ms = text::parse_double(f[9]);
      r.transmissions_total = text::parse_uint(f[10]);
      for (std::size_t k = 0; k < kDropCauseCount; ++k) r.drops[k] = text::parse_uint(f[11 + k]);
      r.in_flight = r.sent - std::min(r.sent, r.delivered + r.drops_total());
      rows.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return rows;
}

AggregateTable aggregate_rows(const std::vector<MetricsRow>& rows, SweepAxis axis) {
  auto key_of = [axis](const MetricsRow& r) -> std::string {
    switch (axis) {
      case SweepAxis::Rate: return format_double(r.labels.rate_pps);
      case SweepAxis::Pause: return format_double(r.labels.pause_s);
      case SweepAxis::NNodes: return std::to_string(r.labels.n_nodes);
      case SweepAxis::Protocol: return "-";
    }
    return "";
  };
  AggregateTable t;
  t.axis = axis;
  auto index_of = [](std::vector<std::string>& v, const std::string& k) {
    auto it = std::find(v.begin(), v.end(), k);
    if (it != v.end()) return static_cast<std::size_t>(it - v.begin());
    v.push_back(k);
    return v.size() - 1;
  };
  struct Acc {
    std::vector<double> ratio, delay, tx;
  };
  std::map<std::pair<std::size_t, std::size_t>, Acc> acc;
  for (const auto& r : rows) {
    const std::size_t v = index_of(t.values, key_of(r));
    const std::size_t p = index_of(t.protocols, r.labels.protocol);
    auto& a = acc[{v, p}];
    a.ratio.push_back(r.delivery_ratio);
    if (r.mean_delay_ms) a.delay.push_back(*r.mean_delay_ms);
    a.tx.push_back(static_cast<double>(r.transmissions_total));
  }
  t.grid.assign(t.values.size(), std::vector<AggregateCell>(t.protocols.size()));
  for (const auto& [key, a] : acc) {
    t.grid[key.first][key.second] = {summarize(a.ratio), summarize(a.delay), summarize(a.tx)};
  }
  return t;
}

namespace {

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

std::string cell_text(const Summary& s, int digits) {
  if (s.n == 0) return "n/a";
  return fixed(s.mean, digits) + " ± " + fixed(s.sd, digits);
}

// Display width, counting the two-byte "±" as one column.
std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

}  // namespace

std::string render_table(const AggregateTable& t) {
  struct Metric {
    const char* title;
    int digits;
    const Summary AggregateCell::*field;
  };
  const Metric metrics[] = {{"delivery_ratio", 4, &AggregateCell::delivery_ratio},
                            {"mean_delay_ms", 2, &AggregateCell::mean_delay_ms},
                            {"transmissions_total", 1, &AggregateCell::transmissions}};

  std::ostringstream out;
  for (const auto& m : metrics) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{std::string(to_string(t.axis))};
    for (const auto& p : t.protocols) head.push_back(p);
    cells.push_back(head);
    for (std::size_t v = 0; v < t.values.size(); ++v) {
      std::vector<std::string> line{t.values[v]};
      for (std::size_t p = 0; p < t.protocols.size(); ++p) line.push_back(cell_text(t.grid[v][p].*(m.field), m.digits));
      cells.push_back(line);
    }
    std::vector<std::size_t> widths(head.size(), 0);
    for (const auto& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], width(line[c]));
    }
    out << m.title << " (mean ± sd)\n";
    for (const auto& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        const std::string pad(widths[c] - width(line[c]), ' ');
        out << (c == 0 ? line[c] + pad : "  " + pad + line[c]);
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace manet
