#include "manet/harness/simulation.hpp"

#include <ostream>
#include <string>

#include "manet/errors.hpp"
#include "manet/harness/text.hpp"
#include "manet/routing/aodv.hpp"
#include "manet/routing/crp.hpp"
#include "manet/routing/gpsr.hpp"
#include "manet/sim/rng.hpp"

namespace manet {

std::unique_ptr<RoutingProtocol> make_protocol(const Scenario& s, RoutingContext ctx) {
  switch (s.protocol) {
    case ProtocolKind::Aodv:
      return std::make_unique<AodvProtocol>(ctx, s.aodv);
    case ProtocolKind::Gpsr:
    case ProtocolKind::GpsrGreedyOnly: {
      GpsrConfig cfg;
      cfg.beacon = s.beacon;
      cfg.perimeter_enabled = s.protocol == ProtocolKind::Gpsr && s.perimeter_enabled;
      cfg.ttl = s.aodv.ttl;
      return std::make_unique<GpsrProtocol>(ctx, cfg);
    }
    case ProtocolKind::Crp: {
      CrpConfig cfg;
      cfg.beacon = s.beacon;
      cfg.aodv = s.aodv;
      cfg.aodv.hello = false;
      cfg.escape_cache = s.escape_cache;
      cfg.reanchor_on_route_loss = s.reanchor_on_route_loss;
      return std::make_unique<CrpProtocol>(ctx, cfg);
    }
  }
  throw Error("unknown protocol");
}

RowLabels labels_for(const Scenario& s) {
  RowLabels l;
  l.protocol = std::string(to_string(s.protocol));
  if (s.protocol == ProtocolKind::Gpsr && !s.perimeter_enabled) l.protocol = "gpsr_greedy_only";
  l.scenario_id = s.scenario_id;
  l.seed = s.seed;
  l.n_nodes = s.n_nodes;
  l.pause_s = s.pause;
  l.rate_pps = s.rate;
  return l;
}

std::vector<WaypointTrace> make_traces(const Scenario& s) {
  std::vector<WaypointTrace> traces;
  traces.reserve(s.n_nodes);
  for (NodeId n = 0; n < s.n_nodes; ++n) {
    RngStream rng = rng_stream(s.seed, "mobility/" + std::to_string(n));
    traces.push_back(random_waypoint_trace(n, s.area, s.speed, s.pause, s.duration, rng));
  }
  return traces;
}

std::vector<CbrStream> make_streams(const Scenario& s) {
  StreamPlan plan;
  plan.n_streams = s.n_streams;
  plan.packet_size = s.packet_size;
  plan.interval = s.interval();
  plan.window_start = SimTime::from_seconds(s.stream_start);
  plan.window_length = SimTime::from_seconds(s.stream_window);
  plan.stop_at = SimTime::from_seconds(s.duration) - SimTime::from_micros(1);
  RngStream pairs = rng_stream(s.seed, "pairs");
  RngStream starts = rng_stream(s.seed, "traffic");
  return make_streams(plan, s.n_nodes, pairs, starts);
}

namespace {

std::vector<WaypointTrace> checked_traces(const Scenario& s, std::optional<std::vector<WaypointTrace>>& given) {
  if (!given) return make_traces(s);
  if (given->size() != s.n_nodes) throw ValidationError("traces", "need exactly one trace per node");
  for (std::size_t i = 0; i < given->size(); ++i) {
    if ((*given)[i].node != i) throw ValidationError("traces", "trace order must match node ids");
  }
  return std::move(*given);
}

}  // namespace

Simulation::Simulation(const Scenario& scenario, RunOptions options)
    : scenario_(scenario),
      end_(SimTime::from_seconds(scenario.duration)),
      traces_((validate(scenario), checked_traces(scenario_, options.traces))),
      streams_(options.streams ? std::move(*options.streams) : make_streams(scenario_)),
      metrics_(Metrics::Options{options.keep_log, options.keep_hops}),
      radio_(traces_, scenario_.radio, sim_, metrics_, rng_stream(scenario_.seed, "jitter")) {
  for (const auto& st : streams_) {
    if (st.src >= scenario_.n_nodes || st.dst >= scenario_.n_nodes || st.src == st.dst) {
      throw ValidationError("streams", "stream endpoints must be distinct existing nodes");
    }
  }
  sim_.keep_log(options.keep_dispatch_log);
  protocol_ = make_protocol(scenario_, RoutingContext{sim_, radio_, metrics_, scenario_.seed});
  radio_.set_receiver([this](NodeId to, const Packet& p, NodeId from) { protocol_->receive(to, p, from); });
  protocol_->start();
  for (std::size_t i = 0; i < streams_.size(); ++i) {
    const auto& st = streams_[i];
    if (st.packet_count() == 0 || st.start_at >= end_) continue;
    sim_.schedule_at(st.start_at, EventKind::TrafficEmit, st.src, [this, i, at = st.start_at] { emit(i, at); });
  }
}

void Simulation::emit(std::size_t i, SimTime at) {
  const CbrStream& st = streams_[i];
  protocol_->originate_data(st.src, st.dst, st.packet_size);
  const SimTime next = at + st.interval;
  if (next <= st.stop_at && next < end_) {
    sim_.schedule_at(next, EventKind::TrafficEmit, st.src, [this, i, next] { emit(i, next); });
  }
}

void Simulation::run_until(SimTime t) { sim_.run_until(t < end_ ? t : end_); }

RunResult Simulation::run() {
  sim_.run_until(end_);
  return result();
}

RunResult Simulation::result() const {
  RunResult r;
  r.row = metrics_.finalize(labels_for(scenario_));
  r.trace_hash = trace_hash(traces_);
  r.streams_hash = streams_hash(streams_);
  r.dispatch_hash = sim_.log_hash();
  for (std::size_t k = 0; k < kPacketKindCount; ++k) r.tx_by_kind[k] = metrics_.tx_count(static_cast<PacketKind>(k));
  r.floods = metrics_.floods();
  r.routes = metrics_.routes();
  r.local_maxima = metrics_.local_maxima();
  r.live_data = radio_.data_in_air() + protocol_->buffered_data();
  r.dispatched = sim_.dispatched();
  return r;
}

RunResult run_one(const Scenario& scenario, RunOptions options) {
  Simulation sim(scenario, std::move(options));
  return sim.run();
}

void dump_traces(std::ostream& os, const std::vector<WaypointTrace>& traces) {
  os << "node,t,x,y\n";
  for (const auto& tr : traces) {
    const std::int64_t steps = tr.duration.ticks / 1'000'000;
    for (std::int64_t t = 0; t <= steps; ++t) {
      const Position p = tr.position_at(SimTime::from_micros(t * 1'000'000));
      os << tr.node << ',' << t << ',' << text::format_double(p.x) << ',' << text::format_double(p.y) << '\n';
    }
  }
}

}  // namespace manet
