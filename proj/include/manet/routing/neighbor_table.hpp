#pragma once

#include <map>
#include <vector>

#include "manet/geo/geometry.hpp"
#include "manet/routing/protocol.hpp"
#include "manet/sim/rng.hpp"

namespace manet {

struct NeighborEntry {
  NodeId neighbor = kNoNode;
  Position pos;  // as advertised in the neighbor's last beacon
  SimTime last_heard;
};

class NeighborTable {
 public:
  void update(NodeId neighbor, Position pos, SimTime heard);
  void evict(NodeId neighbor) { entries_.erase(neighbor); }
  /// Drops entries not refreshed for longer than `timeout`.
  void purge(SimTime now, SimTime timeout);

  const NeighborEntry* find(NodeId neighbor) const;
  /// Entries ordered by node id.
  std::vector<NeighborEntry> entries() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<NodeId, NeighborEntry> entries_;
};

struct BeaconConfig {
  SimTime interval = SimTime::from_millis(1000);
  SimTime jitter = SimTime::from_millis(250);  // each period is interval +/- uniform jitter
  SimTime neighbor_timeout = SimTime::from_millis(4500);
  std::uint32_t size = 32;
};

/// Periodic position beacons and the neighbor tables they feed.
///
/// Each node draws its beacon schedule from its own substream, so the
/// schedule is identical across protocols that beacon.
class BeaconService {
 public:
  BeaconService(RoutingContext ctx, BeaconConfig config);

  const BeaconConfig& config() const { return config_; }

  void start();
  void beacon_tick(NodeId node);
  void handle_beacon(NodeId node, const Packet& beacon, NodeId from);

  NeighborTable& table(NodeId node) { return tables_.at(node); }
  /// The node's table after evicting stale entries.
  std::vector<NeighborEntry> fresh_neighbors(NodeId node);

 private:
  RoutingContext ctx_;
  BeaconConfig config_;
  std::vector<NeighborTable> tables_;
  std::vector<RngStream> rng_;
};

}  // namespace manet
