#pragma once

#include <optional>
#include <span>
#include <vector>

#include "manet/routing/neighbor_table.hpp"
#include "manet/routing/protocol.hpp"

namespace manet {

namespace gpsr {

/// Neighbor strictly closer to `dst` than `self`, minimizing the distance
/// (ties to the lower id). nullopt means `self` is a local maximum.
std::optional<NodeId> greedy_next_hop(Position self, std::span<const NeighborEntry> neighbors, Position dst);

/// Gabriel graph restricted to one node's neighborhood: the edge to `v` is
/// kept unless some other neighbor lies strictly inside the circle with
/// diameter (self, v).
std::vector<NeighborEntry> planarize_gg(Position self, std::span<const NeighborEntry> neighbors);

/// One perimeter-mode step by the right-hand rule over `planar`.
///
/// The first edge counterclockwise from the arrival edge is taken; without an
/// arrival edge (the packet just entered perimeter mode here) the sweep starts
/// from the ray toward `header.dst_pos`. The arrival edge itself is taken only
/// when it is the sole option. When the chosen edge crosses the segment from
/// `loc_entry` to the destination closer than the current face's entry point,
/// the walk switches to the adjacent face. Updates `face_point` and
/// `first_edge` in `header`. Returns nullopt when no planar neighbor exists
/// or the walk is about to repeat the face's first edge.
std::optional<NodeId> perimeter_next_hop(NodeId node, Position self, GeoHeader& header,
                                         std::optional<NodeId> arrived_from,
                                         std::span<const NeighborEntry> planar, NodeId final_dst);

}  // namespace gpsr

struct GpsrConfig {
  BeaconConfig beacon;
  bool perimeter_enabled = true;
  int ttl = 32;
};

/// Greedy Perimeter Stateless Routing over beacon-maintained neighbor tables.
class GpsrProtocol final : public RoutingProtocol {
 public:
  GpsrProtocol(RoutingContext ctx, GpsrConfig config);

  std::string_view name() const override { return config_.perimeter_enabled ? "gpsr" : "gpsr_greedy_only"; }
  void start() override { beacons_.start(); }
  void originate_data(NodeId src, NodeId dst, std::uint32_t size_bytes) override;
  void receive(NodeId node, const Packet& packet, NodeId from) override;

  void beacon_tick(NodeId node) { beacons_.beacon_tick(node); }
  /// Forwards a DATA packet held by `node`; `arrived_from` is empty at the source.
  void gpsr_forward(NodeId node, Packet packet, std::optional<NodeId> arrived_from);

  BeaconService& beacons() { return beacons_; }

 private:
  struct Decision {
    std::optional<NodeId> next;
    DropCause cause = DropCause::PerimeterExhausted;
    GeoHeader header;
  };
  Decision decide(NodeId node, const Packet& packet, std::optional<NodeId> arrived_from);

  GpsrConfig config_;
  BeaconService beacons_;
};

}  // namespace manet
