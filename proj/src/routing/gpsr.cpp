#include "manet/routing/gpsr.hpp"

#include <limits>

namespace manet {

namespace gpsr {

std::optional<NodeId> greedy_next_hop(Position self, std::span<const NeighborEntry> neighbors, Position dst) {
  double best = dist(self, dst);
  std::optional<NodeId> choice;
  for (const auto& n : neighbors) {
    const double d = dist(n.pos, dst);
    if (d < best || (choice && d == best && n.neighbor < *choice)) {
      best = d;
      choice = n.neighbor;
    }
  }
  return choice;
}

std::vector<NeighborEntry> planarize_gg(Position self, std::span<const NeighborEntry> neighbors) {
  std::vector<NeighborEntry> kept;
  for (const auto& v : neighbors) {
    bool witnessed = false;
    for (const auto& w : neighbors) {
      if (w.neighbor == v.neighbor) continue;
      if (strictly_inside_diametral_circle(self, v.pos, w.pos)) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) kept.push_back(v);
  }
  return kept;
}

namespace {

/// Next neighbor counterclockwise from the ray self->reference. A neighbor
/// lying exactly on the reference ray counts as a full turn, so it is chosen
/// only when nothing else is available.
std::optional<NeighborEntry> next_ccw(Position self, Position reference, std::span<const NeighborEntry> planar) {
  std::optional<NeighborEntry> best;
  double best_angle = std::numeric_limits<double>::infinity();
  for (const auto& n : planar) {
    if (n.pos == self) continue;
    double a = ccw_sweep(self, reference, n.pos);
    if (a == 0.0) a = kTwoPi;
    if (a < best_angle || (a == best_angle && best && n.neighbor < best->neighbor)) {
      best_angle = a;
      best = n;
    }
  }
  return best;
}

}  // namespace

std::optional<NodeId> perimeter_next_hop(NodeId node, Position self, GeoHeader& header,
                                         std::optional<NodeId> arrived_from,
                                         std::span<const NeighborEntry> planar, NodeId final_dst) {
  Position reference = header.dst_pos;
  if (arrived_from) {
    for (const auto& n : planar) {
      if (n.neighbor == *arrived_from) reference = n.pos;
    }
  }
  if (reference == self) reference = Position{self.x + 1.0, self.y};

  auto cand = next_ccw(self, reference, planar);
  if (!cand) return std::nullopt;

  // Face change: each switch strictly shrinks the distance from the face
  // entry point to the destination, so the loop is bounded by the degree.
  const Segment toward_dst{header.loc_entry, header.dst_pos};
  for (std::size_t guard = 0; guard <= planar.size() && cand->neighbor != final_dst; ++guard) {
    auto cross = segment_intersection(Segment{self, cand->pos}, toward_dst);
    if (!cross) break;
    const double face_gap = dist(header.face_point, header.dst_pos);
    if (!(dist(*cross, header.dst_pos) < face_gap * (1.0 - 1e-12))) break;
    header.face_point = *cross;
    header.first_edge.reset();
    auto next = next_ccw(self, cand->pos, planar);
    if (!next || next->neighbor == cand->neighbor) break;
    cand = next;
  }

  const Edge edge{node, cand->neighbor};
  if (header.first_edge && *header.first_edge == edge) return std::nullopt;
  if (!header.first_edge) header.first_edge = edge;
  return cand->neighbor;
}

}  // namespace gpsr

GpsrProtocol::GpsrProtocol(RoutingContext ctx, GpsrConfig config)
    : RoutingProtocol(ctx), config_(config), beacons_(ctx, config.beacon) {}

void GpsrProtocol::originate_data(NodeId src, NodeId dst, std::uint32_t size_bytes) {
  GeoHeader h;
  h.dst_pos = ctx_.radio.position(dst, now());
  Packet p = new_data(src, dst, size_bytes, config_.ttl, h);
  if (src == dst) {
    deliver(p);
    return;
  }
  gpsr_forward(src, std::move(p), std::nullopt);
}

void GpsrProtocol::receive(NodeId node, const Packet& packet, NodeId from) {
  if (packet.kind == PacketKind::Beacon) {
    beacons_.handle_beacon(node, packet, from);
    return;
  }
  if (packet.kind != PacketKind::Data) return;
  if (node == packet.final_dst) {
    deliver(packet);
    return;
  }
  Packet p = packet;
  if (!consume_ttl(p)) return;
  gpsr_forward(node, std::move(p), from);
}

GpsrProtocol::Decision GpsrProtocol::decide(NodeId node, const Packet& packet, std::optional<NodeId> arrived_from) {
  const Position self = ctx_.radio.position(node, now());
  const auto neighbors = beacons_.fresh_neighbors(node);
  Decision d;
  d.header = packet.geo();
  GeoHeader& h = d.header;

  if (h.mode == GeoMode::Perimeter && dist(self, h.dst_pos) < dist(h.loc_entry, h.dst_pos)) {
    h.mode = GeoMode::Greedy;
    h.first_edge.reset();
  }

  if (h.mode == GeoMode::Greedy) {
    d.next = gpsr::greedy_next_hop(self, neighbors, h.dst_pos);
    if (d.next) return d;
    ctx_.metrics.record_local_maximum(node);
    if (!config_.perimeter_enabled) return d;
    h.mode = GeoMode::Perimeter;
    h.loc_entry = self;
    h.face_point = self;
    h.first_edge.reset();
    arrived_from.reset();
  }

  const auto planar = gpsr::planarize_gg(self, neighbors);
  d.next = gpsr::perimeter_next_hop(node, self, h, arrived_from, planar, packet.final_dst);
  return d;
}

void GpsrProtocol::gpsr_forward(NodeId node, Packet packet, std::optional<NodeId> arrived_from) {
  if (node == packet.final_dst) {
    deliver(packet);
    return;
  }
  // A link failure evicts the neighbor and the decision is retried once.
  for (int attempt = 0; attempt < 2; ++attempt) {
    Decision d = decide(node, packet, arrived_from);
    if (!d.next) {
      drop(packet, d.cause);
      return;
    }
    Packet out = packet;
    out.geo() = d.header;
    if (ctx_.radio.unicast(node, *d.next, out).delivered()) {
      ctx_.metrics.record_hop(out.uid, {node, dist(ctx_.radio.position(node, now()), d.header.dst_pos),
                                        static_cast<std::uint8_t>(d.header.mode)});
      return;
    }
    beacons_.table(node).evict(*d.next);
  }
  drop(packet, DropCause::LinkFailure);
}

}  // namespace manet
