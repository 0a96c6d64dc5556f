#include "fixtures.hpp"

#include <cmath>

namespace fixture {

Scenario static_scenario(std::uint32_t n_nodes, ProtocolKind protocol, double duration, int ttl) {
  Scenario s;
  s.scenario_id = "static";
  s.protocol = protocol;
  s.n_nodes = n_nodes;
  s.duration = duration;
  s.radio.jitter_max = SimTime{};
  s.aodv.ttl = ttl;
  return s;
}

std::vector<WaypointTrace> static_traces(const std::vector<Position>& pts, double duration) {
  std::vector<WaypointTrace> out;
  for (NodeId i = 0; i < pts.size(); ++i) out.push_back(static_trace(i, pts[i], duration));
  return out;
}

CbrStream stream(NodeId src, NodeId dst, double start, std::uint64_t count, double interval, std::uint32_t size) {
  CbrStream s;
  s.src = src;
  s.dst = dst;
  s.packet_size = size;
  s.interval = SimTime::from_seconds(interval);
  s.start_at = SimTime::from_seconds(start);
  s.stop_at = s.start_at + s.interval * static_cast<std::int64_t>(count - 1);
  return s;
}

namespace {

CheckedRun finish(Simulation& sim) {
  CheckedRun c;
  c.result = sim.run();
  c.replayed = replay_metrics(sim.metrics().log(), labels_for(sim.scenario()));
  for (const auto& rec : sim.metrics().log()) {
    if (rec.type == LogRecord::Type::Transmit) ++c.log_tx[static_cast<std::size_t>(rec.kind)];
    if (rec.type == LogRecord::Type::Deliver) c.delivered.push_back(rec.uid);
  }
  c.hops = sim.metrics().hops();
  return c;
}

}  // namespace

CheckedRun run_checked(const Scenario& s, std::vector<WaypointTrace> traces, std::vector<CbrStream> streams) {
  RunOptions opt;
  opt.keep_log = true;
  opt.keep_hops = true;
  opt.traces = std::move(traces);
  opt.streams = std::move(streams);
  Simulation sim(s, std::move(opt));
  return finish(sim);
}

CheckedRun run_checked(const Scenario& s) {
  RunOptions opt;
  opt.keep_log = true;
  opt.keep_hops = true;
  Simulation sim(s, std::move(opt));
  return finish(sim);
}

std::string identity_violation(const RunResult& r) {
  const auto& row = r.row;
  std::uint64_t drops = 0;
  for (auto d : row.drops) drops += d;
  if (row.delivered > row.sent) return "delivered > sent";
  if (row.sent != row.delivered + drops + row.in_flight) {
    return "sent " + std::to_string(row.sent) + " != delivered " + std::to_string(row.delivered) + " + drops " +
           std::to_string(drops) + " + in_flight " + std::to_string(row.in_flight);
  }
  if (row.in_flight != r.live_data) {
    return "in_flight " + std::to_string(row.in_flight) + " but " + std::to_string(r.live_data) + " packets queued";
  }
  return {};
}

VoidTopology void_topology() {
  VoidTopology v;
  v.pts = {
      {100, 500},  // 0 source
      {300, 500},  // 1 stuck: no neighbor closer to the destination
      {200, 700},  // 2
      {300, 900},  // 3
      {500, 950},  // 4
      {700, 900},  // 5
      {840, 720},  // 6
      {900, 500},  // 7 destination
  };
  return v;
}

}  // namespace fixture
