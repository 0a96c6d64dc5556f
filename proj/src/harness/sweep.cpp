#include "manet/harness/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "manet/errors.hpp"
#include "manet/harness/simulation.hpp"
#include "manet/harness/text.hpp"

namespace manet {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Rate: return "rate";
    case SweepAxis::Pause: return "pause";
    case SweepAxis::NNodes: return "n_nodes";
    case SweepAxis::Protocol: return "protocol";
  }
  return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  for (auto a : {SweepAxis::Rate, SweepAxis::Pause, SweepAxis::NNodes, SweepAxis::Protocol}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::vector<SweepCell> expand(const SweepPlan& plan) {
  if (plan.replications < 1) throw ValidationError("replications", "must be at least 1");
  if (plan.values.empty() && plan.axis != SweepAxis::Protocol) throw ValidationError("values", "no sweep values");

  // A protocol sweep has no separate value list: the protocols are the values.
  std::vector<std::string> values = plan.values;
  std::vector<ProtocolKind> protocols = plan.protocols;
  if (plan.axis == SweepAxis::Protocol) {
    if (!values.empty()) {
      protocols.clear();
      for (const auto& v : values) {
        auto p = parse_protocol(v);
        if (!p) throw ValidationError("values", "unsupported protocol '" + v + "'");
        protocols.push_back(*p);
      }
    }
    values = {"-"};
  }
  if (protocols.empty()) throw ValidationError("protocols", "need at least one protocol");

  std::vector<SweepCell> cells;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    Scenario at_value = plan.base;
    if (plan.axis != SweepAxis::Protocol) apply_setting(at_value, to_string(plan.axis), values[vi]);
    for (std::size_t pi = 0; pi < protocols.size(); ++pi) {
      for (std::uint32_t r = 0; r < plan.replications; ++r) {
        SweepCell c;
        c.value_index = vi;
        c.protocol_index = pi;
        c.replication = r;
        c.scenario = at_value;
        c.scenario.protocol = protocols[pi];
        c.scenario.seed = plan.base.seed + r;
        validate(c.scenario);
        cells.push_back(std::move(c));
      }
    }
  }
  return cells;
}

std::vector<MetricsRow> SweepResult::completed_rows() const {
  std::vector<MetricsRow> out;
  for (const auto& r : rows) {
    if (r) out.push_back(*r);
  }
  return out;
}

unsigned resolve_jobs(unsigned requested) {
  unsigned jobs = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MANET_LAB_JOBS"); env != nullptr && *env != '\0') {
    try {
      const auto cap = static_cast<unsigned>(text::parse_uint(env));
      if (cap >= 1) jobs = std::min(jobs, cap);
    } catch (const std::exception&) {
      // an unreadable cap is ignored
    }
  }
  return std::max(1u, jobs);
}

SweepResult run_sweep(const SweepPlan& plan, unsigned jobs,
                      const std::function<void(std::size_t, std::size_t)>& progress) {
  SweepResult result;
  result.cells = expand(plan);
  const std::size_t total = result.cells.size();
  result.rows.resize(total);
  std::vector<std::optional<std::string>> errors(total);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        result.rows[i] = run_one(result.cells[i].scenario).row;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(d, total);
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (errors[i]) result.failures.push_back({i, *errors[i]});
  }
  return result;
}

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

AggregateTable aggregate(const SweepResult& result, const SweepPlan& plan) {
  AggregateTable t;
  t.axis = plan.axis;
  std::size_t n_values = 0;
  std::size_t n_protocols = 0;
  for (const auto& c : result.cells) {
    n_values = std::max(n_values, c.value_index + 1);
    n_protocols = std::max(n_protocols, c.protocol_index + 1);
  }
  t.values.assign(n_values, "");
  t.protocols.assign(n_protocols, "");
  for (const auto& c : result.cells) {
    t.values[c.value_index] =
        plan.axis == SweepAxis::Protocol ? std::string("-") : plan.values.at(c.value_index);
    t.protocols[c.protocol_index] = labels_for(c.scenario).protocol;
  }

  struct Acc {
    std::vector<double> ratio, delay, tx;
  };
  std::vector<std::vector<Acc>> acc(n_values, std::vector<Acc>(n_protocols));
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    if (!result.rows[i]) continue;
    const auto& row = *result.rows[i];
    auto& a = acc[result.cells[i].value_index][result.cells[i].protocol_index];
    a.ratio.push_back(row.delivery_ratio);
    if (row.mean_delay_ms) a.delay.push_back(*row.mean_delay_ms);
    a.tx.push_back(static_cast<double>(row.transmissions_total));
  }
  t.grid.assign(n_values, std::vector<AggregateCell>(n_protocols));
  for (std::size_t v = 0; v < n_values; ++v) {
    for (std::size_t p = 0; p < n_protocols; ++p) {
      t.grid[v][p] = {summarize(acc[v][p].ratio), summarize(acc[v][p].delay), summarize(acc[v][p].tx)};
    }
  }
  return t;
}

}  // namespace manet
