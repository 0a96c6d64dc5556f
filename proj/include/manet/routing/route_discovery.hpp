#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "manet/routing/protocol.hpp"

namespace manet {

/// Timers, sizes and limits of on-demand route discovery. All are declared
/// defaults; none is prescribed by the protocol description.
struct AodvConfig {
  int ttl = 32;
  std::uint32_t control_size = 64;
  std::uint32_t hello_size = 32;
  SimTime route_lifetime = SimTime::from_millis(10'000);
  int discovery_retries = 2;
  std::size_t buffer_cap = 64;
  SimTime min_discovery_timeout = SimTime::from_millis(100);
  SimTime rreq_cache_window = SimTime::from_millis(10'000);
  bool hello = false;
  SimTime hello_interval = SimTime::from_millis(1000);
  int hello_loss = 2;
};

/// Per-destination next-hop record.
struct RouteEntry {
  NodeId dst = kNoNode;
  NodeId next_hop = kNoNode;
  int hop_count = 0;
  std::uint32_t dst_seq = 0;  // 0 = unknown
  SimTime expires_at;
  bool active = false;

  bool usable(SimTime now) const { return active && now < expires_at; }
};

class RouteTable {
 public:
  const RouteEntry* find(NodeId dst) const;
  /// The entry for `dst` if it may be used for forwarding at `now`.
  const RouteEntry* lookup(NodeId dst, SimTime now) const;

  /// Installs `candidate` if it is fresher than the current entry: strictly
  /// newer sequence number, or the same number with fewer hops. An entry that
  /// is no longer usable yields to any candidate with an equal number, and an
  /// unknown number yields to anything. Returns true if the table now holds
  /// the candidate's route.
  bool offer(const RouteEntry& candidate, SimTime now);

  void refresh(NodeId dst, SimTime expires_at);

  /// Deactivates every usable entry through `next_hop`, bumping its sequence
  /// number, and returns the affected destinations.
  std::vector<Unreachable> invalidate_via(NodeId next_hop, SimTime now);

  /// Deactivates the entry for `dst` if usable; `seq` raises its number.
  std::optional<Unreachable> invalidate(NodeId dst, std::uint32_t seq, SimTime now);

  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::map<NodeId, RouteEntry> entries_;
};

/// Remembers which (origin, rreq_id) floods a node has already processed.
class RreqSeenCache {
 public:
  explicit RreqSeenCache(SimTime window = SimTime::from_millis(10'000)) : window_(window) {}

  /// Records the flood; false if it was already seen within the window.
  bool insert(NodeId origin, std::uint32_t rreq_id, SimTime now);
  bool contains(NodeId origin, std::uint32_t rreq_id, SimTime now) const;

 private:
  using Key = std::pair<NodeId, std::uint32_t>;
  void expire(SimTime now);

  SimTime window_;
  std::map<Key, SimTime> seen_;
  std::deque<std::pair<SimTime, Key>> order_;
};

/// RREQ flooding, reverse-path setup, RREP return and per-destination packet
/// buffering shared by AODV and by the combined protocol's escape discovery.
class RouteDiscovery {
 public:
  struct Hooks {
    /// A route to `packet.final_dst` is usable at `node`; forward the packet.
    std::function<void(NodeId node, Packet packet)> release;
    /// A unicast of a control packet from `node` to `next_hop` failed.
    std::function<void(NodeId node, NodeId next_hop)> control_link_failure;
  };

  RouteDiscovery(RoutingContext ctx, AodvConfig config, Hooks hooks);

  const AodvConfig& config() const { return config_; }
  RouteTable& routes(NodeId node) { return nodes_.at(node).routes; }
  const RouteTable& routes(NodeId node) const { return nodes_.at(node).routes; }
  std::uint32_t own_seq(NodeId node) const { return nodes_.at(node).own_seq; }

  /// Parks `packet` at `node` and floods an RREQ for its destination unless a
  /// discovery is already pending there.
  void request(NodeId node, Packet packet, FloodReason reason);

  void handle_rreq(NodeId node, const Packet& rreq, NodeId from);
  void handle_rrep(NodeId node, const Packet& rrep, NodeId from);
  void discovery_timeout(NodeId node, NodeId dst);

  bool pending(NodeId node, NodeId dst) const;
  std::size_t buffered(NodeId node, NodeId dst) const;
  std::size_t buffered() const { return buffered_total_; }

  /// 2 x ttl x per-hop control delay, floored at the configured minimum.
  SimTime discovery_wait() const;

 private:
  struct Pending {
    std::deque<Packet> buffer;
    int retries_left = 0;
    FloodReason reason = FloodReason::Source;
    EventHandle timer;
  };
  struct NodeState {
    std::uint32_t own_seq = 0;
    std::uint32_t next_rreq_id = 0;
    RouteTable routes;
    RreqSeenCache seen;
    std::map<NodeId, Pending> pending;
  };

  void flood(NodeId node, NodeId dst, Pending& pending);
  void send_rrep(NodeId node, Packet rrep);
  void complete_if_ready(NodeId node, NodeId dst);
  Packet control(PacketKind kind, NodeId origin, NodeId final_dst) const;

  RoutingContext ctx_;
  AodvConfig config_;
  Hooks hooks_;
  std::vector<NodeState> nodes_;
  std::size_t buffered_total_ = 0;
};

}  // namespace manet
