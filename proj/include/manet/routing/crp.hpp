#pragma once

#include "manet/routing/gpsr.hpp"
#include "manet/routing/neighbor_table.hpp"
#include "manet/routing/protocol.hpp"
#include "manet/routing/route_discovery.hpp"

namespace manet {

struct CrpConfig {
  BeaconConfig beacon;
  AodvConfig aodv;
  /// Reuse a route found by an earlier local-maximum discovery.
  bool escape_cache = true;
  /// A table-routed packet that finds no route starts a discovery where it is.
  bool reanchor_on_route_loss = true;
};

/// Combined routing: greedy geographic forwarding while some neighbor is
/// closer to the destination, and a reduced on-demand discovery launched from
/// the node where greedy forwarding gets stuck.
///
/// The reduced discovery has no route repair and sends no RERR: a failed
/// unicast in table mode invalidates the routes through that neighbor and
/// loses the frame. Position beacons stay on because greedy mode needs
/// neighbor positions; there are no hello messages.
class CrpProtocol final : public RoutingProtocol {
 public:
  CrpProtocol(RoutingContext ctx, CrpConfig config);

  std::string_view name() const override { return "crp"; }
  void start() override { beacons_.start(); }
  void originate_data(NodeId src, NodeId dst, std::uint32_t size_bytes) override;
  void receive(NodeId node, const Packet& packet, NodeId from) override;
  std::size_t buffered_data() const override { return discovery_.buffered(); }

  void crp_forward(NodeId node, Packet packet);
  /// Greedy forwarding is stuck at `node` (or a table-routed packet lost its
  /// route there): use a cached route or discover one from here.
  void on_local_maximum(NodeId node, Packet packet, FloodReason reason = FloodReason::LocalMaximum);
  void crp_on_link_failure(NodeId node, NodeId next_hop, const Packet& in_flight);
  /// MAC feedback that `lost` is unreachable from `node`: forget its position
  /// and every route through it.
  void crp_neighbor_maintenance(NodeId node, NodeId lost);

  BeaconService& beacons() { return beacons_; }
  RouteDiscovery& discovery() { return discovery_; }
  const RouteDiscovery& discovery() const { return discovery_; }

 private:
  void send_along_route(NodeId node, Packet packet, NodeId next_hop);

  CrpConfig config_;
  BeaconService beacons_;
  RouteDiscovery discovery_;
};

}  // namespace manet
