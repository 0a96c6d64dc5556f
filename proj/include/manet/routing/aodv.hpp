#pragma once

#include <map>
#include <vector>

#include "manet/routing/protocol.hpp"
#include "manet/routing/route_discovery.hpp"
#include "manet/sim/rng.hpp"

namespace manet {

/// Ad hoc On-demand Distance Vector routing.
///
/// Routes are found by RREQ flooding and RREP return along the reverse path,
/// and maintained by route errors. Link breaks are learned from the MAC
/// callback on a failed unicast, or from missing hello messages when
/// `AodvConfig::hello` is set. RERRs are broadcast one hop; a receiver that
/// routes a listed destination through the sender invalidates it and
/// re-broadcasts its own RERR.
class AodvProtocol final : public RoutingProtocol {
 public:
  AodvProtocol(RoutingContext ctx, AodvConfig config);

  std::string_view name() const override { return "aodv"; }
  void start() override;
  void originate_data(NodeId src, NodeId dst, std::uint32_t size_bytes) override;
  void receive(NodeId node, const Packet& packet, NodeId from) override;
  std::size_t buffered_data() const override { return discovery_.buffered(); }

  void handle_rreq(NodeId node, const Packet& rreq, NodeId from) { discovery_.handle_rreq(node, rreq, from); }
  void handle_rrep(NodeId node, const Packet& rrep, NodeId from) { discovery_.handle_rrep(node, rrep, from); }
  void handle_rerr(NodeId node, const Packet& rerr, NodeId from);

  /// A unicast from `node` to `next_hop` failed while carrying `in_flight`.
  void on_link_failure(NodeId node, NodeId next_hop, const Packet& in_flight);
  void discovery_timeout(NodeId node, NodeId dst) { discovery_.discovery_timeout(node, dst); }

  RouteDiscovery& discovery() { return discovery_; }
  const RouteDiscovery& discovery() const { return discovery_; }

 private:
  void forward(NodeId node, Packet packet);
  void send_data(NodeId node, Packet packet, const RouteEntry& route);
  void invalidate_link(NodeId node, NodeId next_hop);
  void broadcast_rerr(NodeId node, std::vector<Unreachable> lost);
  void hello_tick(NodeId node);

  AodvConfig config_;
  RouteDiscovery discovery_;
  std::vector<std::map<NodeId, SimTime>> last_hello_;
  std::vector<RngStream> hello_rng_;
};

}  // namespace manet
