#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "manet/geo/mobility.hpp"
#include "manet/harness/scenario.hpp"
#include "manet/net/radio.hpp"
#include "manet/routing/protocol.hpp"
#include "manet/sim/event_queue.hpp"
#include "manet/traffic/cbr.hpp"
#include "manet/traffic/metrics.hpp"

namespace manet {

struct RunOptions {
  bool keep_log = false;
  bool keep_hops = false;
  bool keep_dispatch_log = false;
  /// Replace the random-waypoint traces (one per node, covering the duration).
  std::optional<std::vector<WaypointTrace>> traces;
  /// Replace the random CBR streams.
  std::optional<std::vector<CbrStream>> streams;
};

struct RunResult {
  MetricsRow row;
  std::uint64_t trace_hash = 0;
  std::uint64_t streams_hash = 0;
  std::uint64_t dispatch_hash = 0;
  std::array<std::uint64_t, kPacketKindCount> tx_by_kind{};
  std::vector<FloodRecord> floods;
  std::vector<RouteRecord> routes;
  std::vector<NodeId> local_maxima;
  /// DATA packets in the air or parked in buffers when the run stopped.
  std::uint64_t live_data = 0;
  std::uint64_t dispatched = 0;
};

std::unique_ptr<RoutingProtocol> make_protocol(const Scenario& scenario, RoutingContext ctx);
RowLabels labels_for(const Scenario& scenario);

/// Random-waypoint traces of every node, drawn from the scenario seed.
std::vector<WaypointTrace> make_traces(const Scenario& scenario);
/// CBR streams drawn from the scenario seed.
std::vector<CbrStream> make_streams(const Scenario& scenario);

/// One fully wired run. Mobility and traffic depend only on the scenario's
/// seed and geometry, never on the protocol, so runs that differ only in
/// protocol see identical movement and offered load.
class Simulation {
 public:
  explicit Simulation(const Scenario& scenario, RunOptions options = {});
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  const Scenario& scenario() const { return scenario_; }
  const std::vector<WaypointTrace>& traces() const { return traces_; }
  const std::vector<CbrStream>& streams() const { return streams_; }
  Simulator& sim() { return sim_; }
  Radio& radio() { return radio_; }
  Metrics& metrics() { return metrics_; }
  RoutingProtocol& protocol() { return *protocol_; }

  /// Advances to `t` (clamped to the scenario duration).
  void run_until(SimTime t);
  /// Runs to the end and collects the result.
  RunResult run();
  RunResult result() const;

 private:
  void emit(std::size_t stream, SimTime at);

  Scenario scenario_;
  SimTime end_;
  std::vector<WaypointTrace> traces_;
  std::vector<CbrStream> streams_;
  Simulator sim_;
  Metrics metrics_;
  Radio radio_;
  std::unique_ptr<RoutingProtocol> protocol_;
};

RunResult run_one(const Scenario& scenario, RunOptions options = {});

/// Writes `node,t,x,y` samples of every trace at one-second steps.
void dump_traces(std::ostream& os, const std::vector<WaypointTrace>& traces);

}  // namespace manet
