#include "manet/harness/scenario.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "manet/errors.hpp"
#include "manet/harness/text.hpp"

namespace manet {

std::string_view to_string(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::Aodv: return "aodv";
    case ProtocolKind::Gpsr: return "gpsr";
    case ProtocolKind::Crp: return "crp";
    case ProtocolKind::GpsrGreedyOnly: return "gpsr_greedy_only";
  }
  return "?";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
  for (auto p : {ProtocolKind::Aodv, ProtocolKind::Gpsr, ProtocolKind::Crp, ProtocolKind::GpsrGreedyOnly}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

namespace {

using text::format_double;

struct Field {
  std::string_view key;
  std::string_view help;
  std::function<void(Scenario&, std::string_view)> set;
  std::function<std::string(const Scenario&)> get;
};

std::string seconds(SimTime t) { return format_double(t.seconds()); }
std::string onoff(bool b) { return b ? "on" : "off"; }

template <class T>
T narrow_uint(std::string_view v) {
  const auto x = text::parse_uint(v);
  if (x > std::numeric_limits<T>::max()) throw std::invalid_argument("value too large");
  return static_cast<T>(x);
}

ProtocolKind protocol_or_throw(std::string_view v) {
  auto p = parse_protocol(text::trim(v));
  if (!p) throw ValidationError("protocol", "unsupported protocol '" + std::string(text::trim(v)) + "'");
  return *p;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      {"scenario_id", "label copied into every result row",
       [](Scenario& s, std::string_view v) { s.scenario_id = std::string(v); },
       [](const Scenario& s) { return s.scenario_id; }},
      {"protocol", "aodv | gpsr | crp | gpsr_greedy_only",
       [](Scenario& s, std::string_view v) { s.protocol = protocol_or_throw(v); },
       [](const Scenario& s) { return std::string(to_string(s.protocol)); }},
      {"n_nodes", "number of nodes", [](Scenario& s, std::string_view v) { s.n_nodes = narrow_uint<std::uint32_t>(v); },
       [](const Scenario& s) { return std::to_string(s.n_nodes); }},
      {"area_width", "field width, m", [](Scenario& s, std::string_view v) { s.area.width = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.area.width); }},
      {"area_height", "field height, m", [](Scenario& s, std::string_view v) { s.area.height = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.area.height); }},
      {"duration", "simulated time, s", [](Scenario& s, std::string_view v) { s.duration = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.duration); }},
      {"seed", "base random seed", [](Scenario& s, std::string_view v) { s.seed = text::parse_uint(v); },
       [](const Scenario& s) { return std::to_string(s.seed); }},
      {"speed", "random-waypoint speed, m/s", [](Scenario& s, std::string_view v) { s.speed = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.speed); }},
      {"pause", "pause at each waypoint, s", [](Scenario& s, std::string_view v) { s.pause = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.pause); }},
      {"n_streams", "number of CBR streams",
       [](Scenario& s, std::string_view v) { s.n_streams = narrow_uint<std::uint32_t>(v); },
       [](const Scenario& s) { return std::to_string(s.n_streams); }},
      {"rate", "packets per second per stream", [](Scenario& s, std::string_view v) { s.rate = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.rate); }},
      {"interval", "seconds between packets (sets rate = 1 / interval)",
       [](Scenario& s, std::string_view v) {
         const double i = text::parse_double(v);
         if (!(i > 0.0)) throw ValidationError("interval", "must be positive");
         s.rate = 1.0 / i;
       },
       nullptr},
      {"packet_size", "DATA packet size, bytes",
       [](Scenario& s, std::string_view v) { s.packet_size = narrow_uint<std::uint32_t>(v); },
       [](const Scenario& s) { return std::to_string(s.packet_size); }},
      {"stream_start", "earliest stream start, s",
       [](Scenario& s, std::string_view v) { s.stream_start = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.stream_start); }},
      {"stream_window", "stream starts are uniform over this many seconds",
       [](Scenario& s, std::string_view v) { s.stream_window = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.stream_window); }},
      {"radio_range", "unit-disk radius, m", [](Scenario& s, std::string_view v) { s.radio.range = text::parse_double(v); },
       [](const Scenario& s) { return format_double(s.radio.range); }},
      {"bandwidth", "channel rate, bit/s", [](Scenario& s, std::string_view v) { s.radio.bandwidth = text::parse_uint(v); },
       [](const Scenario& s) { return std::to_string(s.radio.bandwidth); }},
      {"processing_delay", "per-hop processing delay, s",
       [](Scenario& s, std::string_view v) { s.radio.processing_delay = SimTime::from_seconds(text::parse_double(v)); },
       [](const Scenario& s) { return seconds(s.radio.processing_delay); }},
      {"jitter_max", "per-receiver delay jitter bound, s",
       [](Scenario& s, std::string_view v) { s.radio.jitter_max = SimTime::from_seconds(text::parse_double(v)); },
       [](const Scenario& s) { return seconds(s.radio.jitter_max); }},
      {"ttl", "hop budget of DATA and RREQ packets",
       [](Scenario& s, std::string_view v) { s.aodv.ttl = narrow_uint<int>(v); },
       [](const Scenario& s) { return std::to_string(s.aodv.ttl); }},
      {"control_size", "RREQ/RREP/RERR size, bytes",
       [](Scenario& s, std::string_view v) { s.aodv.control_size = narrow_uint<std::uint32_t>(v); },
       [](const Scenario& s) { return std::to_string(s.aodv.control_size); }},
      {"route_lifetime", "route lifetime, refreshed on use, s",
       [](Scenario& s, std::string_view v) { s.aodv.route_lifetime = SimTime::from_seconds(text::parse_double(v)); },
       [](const Scenario& s) { return seconds(s.aodv.route_lifetime); }},
      {"discovery_retries", "RREQ re-floods before buffered packets are dropped",
       [](Scenario& s, std::string_view v) { s.aodv.discovery_retries = narrow_uint<int>(v); },
       [](const Scenario& s) { return std::to_string(s.aodv.discovery_retries); }},
      {"min_discovery_timeout", "lower bound of the discovery timer, s",
       [](Scenario& s, std::string_view v) {
         s.aodv.min_discovery_timeout = SimTime::from_seconds(text::parse_double(v));
       },
       [](const Scenario& s) { return seconds(s.aodv.min_discovery_timeout); }},
      {"buffer_cap", "per-destination discovery buffer, packets",
       [](Scenario& s, std::string_view v) { s.aodv.buffer_cap = narrow_uint<std::size_t>(v); },
       [](const Scenario& s) { return std::to_string(s.aodv.buffer_cap); }},
      {"aodv_hello", "AODV hello messages for link liveness (on/off)",
       [](Scenario& s, std::string_view v) { s.aodv.hello = text::parse_bool(v); },
       [](const Scenario& s) { return onoff(s.aodv.hello); }},
      {"hello_interval", "hello period, s",
       [](Scenario& s, std::string_view v) { s.aodv.hello_interval = SimTime::from_seconds(text::parse_double(v)); },
       [](const Scenario& s) { return seconds(s.aodv.hello_interval); }},
      {"hello_size", "hello size, bytes",
       [](Scenario& s, std::string_view v) { s.aodv.hello_size = narrow_uint<std::uint32_t>(v); },
       [](const Scenario& s) { return std::to_string(s.aodv.hello_size); }},
      {"beacon_interval", "position beacon period, s",
       [](Scenario& s, std::string_view v) { s.beacon.interval = SimTime::from_seconds(text::parse_double(v)); },
       [](const Scenario& s) { return seconds(s.beacon.interval); }},
      {"beacon_jitter", "beacon period jitter (+/-), s",
       [](Scenario& s, std::string_view v) { s.beacon.jitter = SimTime::from_seconds(text::parse_double(v)); },
       [](const Scenario& s) { return seconds(s.beacon.jitter); }},
      {"neighbor_timeout", "neighbor entry lifetime without beacons, s",
       [](Scenario& s, std::string_view v) { s.beacon.neighbor_timeout = SimTime::from_seconds(text::parse_double(v)); },
       [](const Scenario& s) { return seconds(s.beacon.neighbor_timeout); }},
      {"beacon_size", "beacon size, bytes",
       [](Scenario& s, std::string_view v) { s.beacon.size = narrow_uint<std::uint32_t>(v); },
       [](const Scenario& s) { return std::to_string(s.beacon.size); }},
      {"perimeter_enabled", "GPSR perimeter mode (false = greedy only)",
       [](Scenario& s, std::string_view v) { s.perimeter_enabled = text::parse_bool(v); },
       [](const Scenario& s) { return std::string(s.perimeter_enabled ? "true" : "false"); }},
      {"escape_cache", "CRP reuses routes found at a local maximum (on/off)",
       [](Scenario& s, std::string_view v) { s.escape_cache = text::parse_bool(v); },
       [](const Scenario& s) { return onoff(s.escape_cache); }},
      {"reanchor_on_route_loss", "CRP rediscovers where a table route is missing (on/off)",
       [](Scenario& s, std::string_view v) { s.reanchor_on_route_loss = text::parse_bool(v); },
       [](const Scenario& s) { return onoff(s.reanchor_on_route_loss); }},
      {"sweep_axis", "default sweep axis: rate | pause | n_nodes | protocol",
       [](Scenario& s, std::string_view v) { s.sweep.axis = std::string(v); },
       [](const Scenario& s) { return s.sweep.axis; }},
      {"sweep_values", "default comma-separated sweep values",
       [](Scenario& s, std::string_view v) {
         s.sweep.values.clear();
         if (!v.empty()) s.sweep.values = text::split(v, ',');
       },
       [](const Scenario& s) {
         std::string out;
         for (const auto& v : s.sweep.values) out += (out.empty() ? "" : ",") + v;
         return out;
       }},
      {"replications", "default replications per sweep cell (seed = seed + index)",
       [](Scenario& s, std::string_view v) { s.sweep.replications = narrow_uint<std::uint32_t>(v); },
       [](const Scenario& s) { return std::to_string(s.sweep.replications); }},
      {"protocols", "default comma-separated protocols compared in a sweep",
       [](Scenario& s, std::string_view v) {
         s.sweep.protocols.clear();
         for (const auto& name : text::split(v, ',')) {
           auto p = parse_protocol(name);
           if (!p) throw ValidationError("protocols", "unsupported protocol '" + name + "'");
           s.sweep.protocols.push_back(*p);
         }
       },
       [](const Scenario& s) {
         std::string out;
         for (auto p : s.sweep.protocols) out += (out.empty() ? "" : ",") + std::string(to_string(p));
         return out;
       }},
  };
  return all;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

void set_field(Scenario& s, const Field& f, std::string_view value, std::size_t line) {
  try {
    f.set(s, value);
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    if (line == 0) throw ValidationError(std::string(f.key), e.what());
    throw ParseError(line, std::string(f.key) + ": " + e.what());
  }
}

}  // namespace

void apply_setting(Scenario& scenario, std::string_view key, std::string_view value) {
  const Field* f = find_field(text::trim(key));
  if (f == nullptr) throw ValidationError(std::string(text::trim(key)), "unknown key");
  set_field(scenario, *f, text::trim(value), 0);
}

Scenario parse_scenario(std::string_view input) {
  Scenario s;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= input.size()) {
    const auto end = input.find('\n', start);
    std::string_view line = input.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? input.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string_view key = text::trim(line.substr(0, eq));
    const std::string_view value = text::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");

    const Field* f = find_field(key);
    if (f == nullptr) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    set_field(s, *f, value, line_no);
  }
  validate(s);
  return s;
}

void validate(const Scenario& s) {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
  };
  require(!s.scenario_id.empty() && s.scenario_id.find(',') == std::string::npos, "scenario_id",
          "must be non-empty and contain no commas");
  require(s.n_nodes >= 2, "n_nodes", "need at least 2 nodes");
  require(s.area.width > 0.0, "area_width", "must be positive");
  require(s.area.height > 0.0, "area_height", "must be positive");
  require(s.duration >= 0.0, "duration", "must not be negative");
  require(s.speed > 0.0, "speed", "must be positive");
  require(s.pause >= 0.0, "pause", "must not be negative");
  require(s.n_streams >= 1, "n_streams", "need at least one stream");
  require(s.rate > 0.0, "rate", "must be positive");
  require(s.interval().ticks > 0, "rate", "interval rounds to zero");
  require(s.packet_size > 0, "packet_size", "must be positive");
  require(s.stream_start >= 0.0, "stream_start", "must not be negative");
  require(s.stream_window >= 0.0, "stream_window", "must not be negative");
  require(s.radio.range > 0.0, "radio_range", "must be positive");
  require(s.radio.bandwidth > 0, "bandwidth", "must be positive");
  require(s.radio.processing_delay.ticks >= 0, "processing_delay", "must not be negative");
  require(s.radio.jitter_max.ticks >= 0, "jitter_max", "must not be negative");
  require(s.aodv.ttl >= 1, "ttl", "must be at least 1");
  require(s.aodv.control_size > 0, "control_size", "must be positive");
  require(s.aodv.route_lifetime.ticks > 0, "route_lifetime", "must be positive");
  require(s.aodv.min_discovery_timeout.ticks > 0, "min_discovery_timeout", "must be positive");
  require(s.aodv.buffer_cap >= 1, "buffer_cap", "must be at least 1");
  require(s.aodv.hello_interval.ticks > 0, "hello_interval", "must be positive");
  require(s.aodv.hello_size > 0, "hello_size", "must be positive");
  require(s.beacon.interval.ticks > 0, "beacon_interval", "must be positive");
  require(s.beacon.jitter.ticks >= 0 && s.beacon.jitter < s.beacon.interval, "beacon_jitter",
          "must be in [0, beacon_interval)");
  require(s.beacon.neighbor_timeout.ticks > 0, "neighbor_timeout", "must be positive");
  require(s.beacon.size > 0, "beacon_size", "must be positive");
  require(s.sweep.axis.empty() || s.sweep.axis == "rate" || s.sweep.axis == "pause" || s.sweep.axis == "n_nodes" ||
              s.sweep.axis == "protocol",
          "sweep_axis", "must be rate, pause, n_nodes or protocol");
  require(s.sweep.replications >= 1, "replications", "must be at least 1");
  require(!s.sweep.protocols.empty(), "protocols", "need at least one protocol");
}

std::string to_text(const Scenario& s) {
  std::string out;
  for (const auto& f : fields()) {
    if (!f.get) continue;
    out += std::string(f.key) + " = " + f.get(s) + "\n";
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> scenario_keys() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.help);
  return out;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace manet
