#include "manet/routing/crp.hpp"

namespace manet {

CrpProtocol::CrpProtocol(RoutingContext ctx, CrpConfig config)
    : RoutingProtocol(ctx),
      config_(config),
      beacons_(ctx, config.beacon),
      discovery_(ctx, config.aodv,
                 RouteDiscovery::Hooks{
                     [this](NodeId node, Packet p) {
                       p.crp().mode = CrpMode::AodvRoute;
                       if (const RouteEntry* r = discovery_.routes(node).lookup(p.final_dst, now())) {
                         send_along_route(node, std::move(p), r->next_hop);
                       } else {
                         drop(p, DropCause::LinkFailure);
                       }
                     },
                     [this](NodeId node, NodeId next_hop) { crp_neighbor_maintenance(node, next_hop); }}) {}

void CrpProtocol::originate_data(NodeId src, NodeId dst, std::uint32_t size_bytes) {
  CrpHeader h;
  h.dst_pos = ctx_.radio.position(dst, now());
  Packet p = new_data(src, dst, size_bytes, config_.aodv.ttl, h);
  crp_forward(src, std::move(p));
}

void CrpProtocol::receive(NodeId node, const Packet& packet, NodeId from) {
  switch (packet.kind) {
    case PacketKind::Beacon: beacons_.handle_beacon(node, packet, from); return;
    case PacketKind::Rreq: discovery_.handle_rreq(node, packet, from); return;
    case PacketKind::Rrep: discovery_.handle_rrep(node, packet, from); return;
    case PacketKind::Data: {
      if (node == packet.final_dst) {
        deliver(packet);
        return;
      }
      Packet p = packet;
      if (!consume_ttl(p)) return;
      crp_forward(node, std::move(p));
      return;
    }
    case PacketKind::Rerr:
    case PacketKind::Hello: return;
  }
}

void CrpProtocol::crp_forward(NodeId node, Packet packet) {
  if (node == packet.final_dst) {
    deliver(packet);
    return;
  }
  const Position dst_pos = packet.crp().dst_pos;

  if (packet.crp().mode == CrpMode::AodvRoute) {
    const RouteEntry* r = discovery_.routes(node).lookup(packet.final_dst, now());
    if (r != nullptr) {
      send_along_route(node, std::move(packet), r->next_hop);
    } else if (config_.reanchor_on_route_loss) {
      on_local_maximum(node, std::move(packet), FloodReason::RouteLoss);
    } else {
      drop(packet, DropCause::LinkFailure);
    }
    return;
  }

  // Greedy mode follows the GPSR failure rule: evict and decide once more.
  for (int attempt = 0; attempt < 2; ++attempt) {
    const Position self = ctx_.radio.position(node, now());
    const auto neighbors = beacons_.fresh_neighbors(node);
    const auto next = gpsr::greedy_next_hop(self, neighbors, dst_pos);
    if (!next) {
      ctx_.metrics.record_local_maximum(node);
      on_local_maximum(node, std::move(packet));
      return;
    }
    if (ctx_.radio.unicast(node, *next, packet).delivered()) {
      ctx_.metrics.record_hop(packet.uid, {node, dist(self, dst_pos), static_cast<std::uint8_t>(CrpMode::GeoGreedy)});
      return;
    }
    crp_neighbor_maintenance(node, *next);
  }
  drop(packet, DropCause::LinkFailure);
}

void CrpProtocol::on_local_maximum(NodeId node, Packet packet, FloodReason reason) {
  if (config_.escape_cache) {
    if (const RouteEntry* r = discovery_.routes(node).lookup(packet.final_dst, now())) {
      packet.crp().mode = CrpMode::AodvRoute;
      send_along_route(node, std::move(packet), r->next_hop);
      return;
    }
  }
  discovery_.request(node, std::move(packet), reason);
}

void CrpProtocol::send_along_route(NodeId node, Packet packet, NodeId next_hop) {
  discovery_.routes(node).refresh(packet.final_dst, now() + config_.aodv.route_lifetime);
  if (ctx_.radio.unicast(node, next_hop, packet).delivered()) {
    ctx_.metrics.record_hop(packet.uid, {node, dist(ctx_.radio.position(node, now()), packet.crp().dst_pos),
                                         static_cast<std::uint8_t>(CrpMode::AodvRoute)});
    return;
  }
  crp_on_link_failure(node, next_hop, packet);
}

void CrpProtocol::crp_on_link_failure(NodeId node, NodeId next_hop, const Packet& in_flight) {
  crp_neighbor_maintenance(node, next_hop);
  drop(in_flight, DropCause::LinkFailure);
}

void CrpProtocol::crp_neighbor_maintenance(NodeId node, NodeId lost) {
  beacons_.table(node).evict(lost);
  discovery_.routes(node).invalidate_via(lost, now());
}

}  // namespace manet
