#include "manet/routing/aodv.hpp"

#include <string>

namespace manet {

AodvProtocol::AodvProtocol(RoutingContext ctx, AodvConfig config)
    : RoutingProtocol(ctx),
      config_(config),
      discovery_(ctx, config,
                 RouteDiscovery::Hooks{
                     [this](NodeId node, Packet p) {
                       if (const RouteEntry* r = discovery_.routes(node).lookup(p.final_dst, now())) {
                         send_data(node, std::move(p), *r);
                       } else {
                         discovery_.request(node, std::move(p), FloodReason::Source);
                       }
                     },
                     [this](NodeId node, NodeId next_hop) {
                       if (!config_.hello) invalidate_link(node, next_hop);
                     }}),
      last_hello_(ctx.radio.node_count()) {}

void AodvProtocol::start() {
  if (!config_.hello) return;
  for (NodeId n = 0; n < ctx_.radio.node_count(); ++n) {
    hello_rng_.emplace_back(ctx_.seed, "hello/" + std::to_string(n));
    const SimTime first{hello_rng_.back().between(0, config_.hello_interval.ticks - 1)};
    ctx_.sim.schedule_at(first, EventKind::BeaconTick, n, [this, n] { hello_tick(n); });
  }
}

void AodvProtocol::hello_tick(NodeId node) {
  Packet hello;
  hello.uid = ctx_.metrics.next_uid();
  hello.kind = PacketKind::Hello;
  hello.origin = node;
  hello.final_dst = kNoNode;
  hello.created_at = now();
  hello.ttl = 1;
  hello.size_bytes = config_.hello_size;
  ctx_.radio.broadcast(node, hello);

  const SimTime limit = config_.hello_interval * config_.hello_loss;
  auto& heard = last_hello_[node];
  for (auto it = heard.begin(); it != heard.end();) {
    if (now() - it->second > limit) {
      const NodeId lost = it->first;
      it = heard.erase(it);
      invalidate_link(node, lost);
    } else {
      ++it;
    }
  }
  ctx_.sim.schedule_in(config_.hello_interval, EventKind::BeaconTick, node, [this, node] { hello_tick(node); });
}

void AodvProtocol::originate_data(NodeId src, NodeId dst, std::uint32_t size_bytes) {
  Packet p = new_data(src, dst, size_bytes, config_.ttl, std::monostate{});
  if (src == dst) {
    deliver(p);
    return;
  }
  if (const RouteEntry* r = discovery_.routes(src).lookup(dst, now())) {
    send_data(src, std::move(p), *r);
  } else {
    discovery_.request(src, std::move(p), FloodReason::Source);
  }
}

void AodvProtocol::receive(NodeId node, const Packet& packet, NodeId from) {
  switch (packet.kind) {
    case PacketKind::Data: {
      if (node == packet.final_dst) {
        deliver(packet);
        return;
      }
      Packet p = packet;
      if (!consume_ttl(p)) return;
      forward(node, std::move(p));
      return;
    }
    case PacketKind::Rreq: handle_rreq(node, packet, from); return;
    case PacketKind::Rrep: handle_rrep(node, packet, from); return;
    case PacketKind::Rerr: handle_rerr(node, packet, from); return;
    case PacketKind::Hello: last_hello_[node][from] = now(); return;
    case PacketKind::Beacon: return;
  }
}

void AodvProtocol::forward(NodeId node, Packet packet) {
  if (const RouteEntry* r = discovery_.routes(node).lookup(packet.final_dst, now())) {
    send_data(node, std::move(packet), *r);
    return;
  }
  // No active route at a relay: report the destination upstream.
  const RouteEntry* stale = discovery_.routes(node).find(packet.final_dst);
  broadcast_rerr(node, {Unreachable{packet.final_dst, stale != nullptr ? stale->dst_seq : 0}});
  drop(packet, DropCause::LinkFailure);
}

void AodvProtocol::send_data(NodeId node, Packet packet, const RouteEntry& route) {
  const NodeId next = route.next_hop;
  auto& table = discovery_.routes(node);
  table.refresh(packet.final_dst, now() + config_.route_lifetime);
  table.refresh(packet.origin, now() + config_.route_lifetime);
  if (ctx_.radio.unicast(node, next, packet).delivered()) {
    ctx_.metrics.record_hop(packet.uid, {node, 0.0, 0});
    return;
  }
  if (config_.hello) {
    // Liveness comes from hellos only; the frame is simply lost.
    drop(packet, DropCause::LinkFailure);
    return;
  }
  on_link_failure(node, next, packet);
}

void AodvProtocol::on_link_failure(NodeId node, NodeId next_hop, const Packet& in_flight) {
  invalidate_link(node, next_hop);
  if (in_flight.kind != PacketKind::Data) return;
  if (in_flight.origin == node) {
    discovery_.request(node, in_flight, FloodReason::Source);
  } else {
    drop(in_flight, DropCause::LinkFailure);
  }
}

void AodvProtocol::invalidate_link(NodeId node, NodeId next_hop) {
  auto lost = discovery_.routes(node).invalidate_via(next_hop, now());
  if (!lost.empty()) broadcast_rerr(node, std::move(lost));
}

void AodvProtocol::broadcast_rerr(NodeId node, std::vector<Unreachable> lost) {
  Packet rerr;
  rerr.uid = ctx_.metrics.next_uid();
  rerr.kind = PacketKind::Rerr;
  rerr.origin = node;
  rerr.final_dst = kNoNode;
  rerr.created_at = now();
  rerr.ttl = 1;
  rerr.size_bytes = config_.control_size;
  AodvHeader h;
  h.unreachable = std::move(lost);
  rerr.header = std::move(h);
  ctx_.radio.broadcast(node, rerr);
}

void AodvProtocol::handle_rerr(NodeId node, const Packet& rerr, NodeId from) {
  auto& table = discovery_.routes(node);
  std::vector<Unreachable> relay;
  for (const Unreachable& u : rerr.aodv().unreachable) {
    const RouteEntry* e = table.lookup(u.dst, now());
    if (e == nullptr || e->next_hop != from) continue;
    if (auto lost = table.invalidate(u.dst, u.dst_seq, now())) relay.push_back(*lost);
  }
  if (!relay.empty()) broadcast_rerr(node, std::move(relay));
}

}  // namespace manet
