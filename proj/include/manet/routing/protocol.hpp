#pragma once

#include <cstdint>
#include <string_view>

#include "manet/net/packet.hpp"
#include "manet/net/radio.hpp"
#include "manet/sim/event_queue.hpp"
#include "manet/traffic/metrics.hpp"

namespace manet {

/// Services shared by every node's routing agent within one run.
struct RoutingContext {
  Simulator& sim;
  Radio& radio;
  Metrics& metrics;
  std::uint64_t seed = 0;
};

/// A routing protocol instance drives the agents of all nodes of one run.
/// Node state is disjoint; everything runs on the run's event loop.
class RoutingProtocol {
 public:
  explicit RoutingProtocol(RoutingContext ctx) : ctx_(ctx) {}
  virtual ~RoutingProtocol() = default;
  RoutingProtocol(const RoutingProtocol&) = delete;
  RoutingProtocol& operator=(const RoutingProtocol&) = delete;

  virtual std::string_view name() const = 0;

  /// Schedules periodic activity (beacons, hellos). Called once before the run.
  virtual void start() {}

  /// A new DATA packet from the application at `src`.
  virtual void originate_data(NodeId src, NodeId dst, std::uint32_t size_bytes) = 0;

  /// A packet transmitted by `from` arrived at `node`.
  virtual void receive(NodeId node, const Packet& packet, NodeId from) = 0;

  /// DATA packets currently parked in route-discovery buffers.
  virtual std::size_t buffered_data() const { return 0; }

 protected:
  SimTime now() const { return ctx_.sim.now(); }

  Packet new_data(NodeId src, NodeId dst, std::uint32_t size_bytes, int ttl, RoutingHeader header) {
    Packet p;
    p.uid = ctx_.metrics.next_uid();
    p.kind = PacketKind::Data;
    p.origin = src;
    p.final_dst = dst;
    p.created_at = now();
    p.ttl = ttl;
    p.size_bytes = size_bytes;
    p.header = std::move(header);
    ctx_.metrics.record_origination(p, now());
    return p;
  }

  void deliver(const Packet& p) { ctx_.metrics.record_delivery(p, now()); }
  void drop(const Packet& p, DropCause cause) { ctx_.metrics.record_drop(p, cause, now()); }

  /// Receive-side TTL accounting for a packet that must be forwarded again.
  /// Returns false (after recording the drop for DATA) when the budget is spent.
  bool consume_ttl(Packet& p) {
    if (--p.ttl > 0) return true;
    if (p.kind == PacketKind::Data) drop(p, DropCause::Ttl);
    return false;
  }

  RoutingContext ctx_;
};

}  // namespace manet
