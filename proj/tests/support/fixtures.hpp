#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "manet/harness/scenario.hpp"
#include "manet/harness/simulation.hpp"

namespace fixture {

using namespace manet;

/// Scenario for hand-placed static nodes: jitter 0, duration `duration` s.
Scenario static_scenario(std::uint32_t n_nodes, ProtocolKind protocol, double duration = 30.0, int ttl = 64);

std::vector<WaypointTrace> static_traces(const std::vector<Position>& pts, double duration);

/// `count` packets from src to dst every `interval` s starting at `start` s.
CbrStream stream(NodeId src, NodeId dst, double start, std::uint64_t count, double interval = 0.25,
                 std::uint32_t size = 512);

/// A run plus the cross-checks shared by the accounting tests.
struct CheckedRun {
  RunResult result;
  MetricsRow replayed;                              // recomputed from the event log
  std::array<std::uint64_t, kPacketKindCount> log_tx{};  // Transmit records per kind
  std::unordered_map<PacketId, std::vector<HopRecord>> hops;
  std::vector<PacketId> delivered;
};

CheckedRun run_checked(const Scenario& s, std::vector<WaypointTrace> traces, std::vector<CbrStream> streams);
CheckedRun run_checked(const Scenario& s);

/// Empty when delivered <= sent, sent = delivered + drops + in_flight and
/// in_flight matches the packets actually still queued or in the air.
std::string identity_violation(const RunResult& r);

/// A source, a destination and a void between them. Node 1 is the only
/// neighbor of the source and has no neighbor closer to the destination;
/// the detour runs along the top of the void.
struct VoidTopology {
  std::vector<Position> pts;
  NodeId src = 0;
  NodeId local_max = 1;
  NodeId dst = 7;
};

VoidTopology void_topology();

}  // namespace fixture
