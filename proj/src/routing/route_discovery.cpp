#include "manet/routing/route_discovery.hpp"

#include <algorithm>

namespace manet {

// ---------------------------------------------------------------------------
// RouteTable

const RouteEntry* RouteTable::find(NodeId dst) const {
  auto it = entries_.find(dst);
  return it == entries_.end() ? nullptr : &it->second;
}

const RouteEntry* RouteTable::lookup(NodeId dst, SimTime now) const {
  const RouteEntry* e = find(dst);
  return e != nullptr && e->usable(now) ? e : nullptr;
}

bool RouteTable::offer(const RouteEntry& candidate, SimTime now) {
  auto [it, inserted] = entries_.try_emplace(candidate.dst, candidate);
  if (inserted) return true;
  RouteEntry& cur = it->second;

  const bool replace = cur.dst_seq == 0 || candidate.dst_seq > cur.dst_seq ||
                       (candidate.dst_seq == cur.dst_seq &&
                        (!cur.usable(now) || candidate.hop_count < cur.hop_count));
  if (replace) {
    cur = candidate;
    return true;
  }
  if (candidate.dst_seq == cur.dst_seq && candidate.hop_count == cur.hop_count &&
      candidate.next_hop == cur.next_hop) {
    cur.expires_at = std::max(cur.expires_at, candidate.expires_at);
    return true;
  }
  return false;
}

void RouteTable::refresh(NodeId dst, SimTime expires_at) {
  auto it = entries_.find(dst);
  if (it != entries_.end() && it->second.active) it->second.expires_at = std::max(it->second.expires_at, expires_at);
}

std::vector<Unreachable> RouteTable::invalidate_via(NodeId next_hop, SimTime now) {
  std::vector<Unreachable> lost;
  for (auto& [dst, e] : entries_) {
    if (e.next_hop != next_hop || !e.active) continue;
    const bool was_usable = e.usable(now);
    e.active = false;
    if (e.dst_seq != 0) ++e.dst_seq;
    if (was_usable) lost.push_back({dst, e.dst_seq});
  }
  return lost;
}

std::optional<Unreachable> RouteTable::invalidate(NodeId dst, std::uint32_t seq, SimTime now) {
  auto it = entries_.find(dst);
  if (it == entries_.end() || !it->second.usable(now)) return std::nullopt;
  RouteEntry& e = it->second;
  e.active = false;
  e.dst_seq = std::max(e.dst_seq == 0 ? 0 : e.dst_seq + 1, seq);
  return Unreachable{dst, e.dst_seq};
}

// ---------------------------------------------------------------------------
// RreqSeenCache

void RreqSeenCache::expire(SimTime now) {
  while (!order_.empty() && now - order_.front().first >= window_) {
    auto it = seen_.find(order_.front().second);
    if (it != seen_.end() && it->second == order_.front().first) seen_.erase(it);
    order_.pop_front();
  }
}

bool RreqSeenCache::insert(NodeId origin, std::uint32_t rreq_id, SimTime now) {
  expire(now);
  const Key key{origin, rreq_id};
  if (seen_.contains(key)) return false;
  seen_.emplace(key, now);
  order_.emplace_back(now, key);
  return true;
}

bool RreqSeenCache::contains(NodeId origin, std::uint32_t rreq_id, SimTime now) const {
  auto it = seen_.find(Key{origin, rreq_id});
  return it != seen_.end() && now - it->second < window_;
}

// ---------------------------------------------------------------------------
// RouteDiscovery

RouteDiscovery::RouteDiscovery(RoutingContext ctx, AodvConfig config, Hooks hooks)
    : ctx_(ctx), config_(config), hooks_(std::move(hooks)), nodes_(ctx.radio.node_count()) {
  for (auto& n : nodes_) n.seen = RreqSeenCache(config_.rreq_cache_window);
}

SimTime RouteDiscovery::discovery_wait() const {
  const SimTime per_hop = ctx_.radio.hop_delay(config_.control_size);
  return std::max(config_.min_discovery_timeout, per_hop * (2 * static_cast<std::int64_t>(config_.ttl)));
}

Packet RouteDiscovery::control(PacketKind kind, NodeId origin, NodeId final_dst) const {
  Packet p;
  p.uid = ctx_.metrics.next_uid();
  p.kind = kind;
  p.origin = origin;
  p.final_dst = final_dst;
  p.created_at = ctx_.sim.now();
  p.ttl = config_.ttl;
  p.size_bytes = config_.control_size;
  p.header = AodvHeader{};
  return p;
}

bool RouteDiscovery::pending(NodeId node, NodeId dst) const { return nodes_.at(node).pending.contains(dst); }

std::size_t RouteDiscovery::buffered(NodeId node, NodeId dst) const {
  const auto& p = nodes_.at(node).pending;
  auto it = p.find(dst);
  return it == p.end() ? 0 : it->second.buffer.size();
}

void RouteDiscovery::request(NodeId node, Packet packet, FloodReason reason) {
  const NodeId dst = packet.final_dst;
  auto& state = nodes_.at(node);
  auto [it, fresh] = state.pending.try_emplace(dst);
  Pending& pend = it->second;

  pend.buffer.push_back(std::move(packet));
  ++buffered_total_;
  if (pend.buffer.size() > config_.buffer_cap) {
    ctx_.metrics.record_drop(pend.buffer.front(), DropCause::Buffer, ctx_.sim.now());
    pend.buffer.pop_front();
    --buffered_total_;
  }
  if (fresh) {
    pend.retries_left = config_.discovery_retries;
    pend.reason = reason;
    flood(node, dst, pend);
  }
}

void RouteDiscovery::flood(NodeId node, NodeId dst, Pending& pending) {
  auto& state = nodes_.at(node);
  ++state.own_seq;
  const std::uint32_t id = ++state.next_rreq_id;
  state.seen.insert(node, id, ctx_.sim.now());

  Packet rreq = control(PacketKind::Rreq, node, dst);
  auto& h = rreq.aodv();
  h.rreq_id = id;
  h.origin_seq = state.own_seq;
  const RouteEntry* known = state.routes.find(dst);
  h.dst_seq = known != nullptr ? known->dst_seq : 0;
  h.hop_count = 0;

  ctx_.metrics.record_flood({ctx_.sim.now(), node, dst, pending.reason});
  ctx_.radio.broadcast(node, rreq);
  pending.timer = ctx_.sim.schedule_in(discovery_wait(), EventKind::TimerExpiry, node,
                                       [this, node, dst] { discovery_timeout(node, dst); });
}

void RouteDiscovery::discovery_timeout(NodeId node, NodeId dst) {
  auto& state = nodes_.at(node);
  auto it = state.pending.find(dst);
  if (it == state.pending.end()) return;
  Pending& pend = it->second;
  pend.timer.valid = false;
  if (pend.retries_left > 0) {
    --pend.retries_left;
    flood(node, dst, pend);
    return;
  }
  for (const Packet& p : pend.buffer) ctx_.metrics.record_drop(p, DropCause::DiscoveryTimeout, ctx_.sim.now());
  buffered_total_ -= pend.buffer.size();
  state.pending.erase(it);
}

void RouteDiscovery::complete_if_ready(NodeId node, NodeId dst) {
  auto& state = nodes_.at(node);
  auto it = state.pending.find(dst);
  if (it == state.pending.end()) return;
  const RouteEntry* route = state.routes.lookup(dst, ctx_.sim.now());
  if (route == nullptr) return;

  ctx_.sim.cancel(it->second.timer);
  ctx_.metrics.record_route({ctx_.sim.now(), node, dst, route->hop_count});
  std::deque<Packet> buffer = std::move(it->second.buffer);
  buffered_total_ -= buffer.size();
  state.pending.erase(it);
  for (Packet& p : buffer) hooks_.release(node, std::move(p));
}

void RouteDiscovery::send_rrep(NodeId node, Packet rrep) {
  const RouteEntry* back = nodes_.at(node).routes.lookup(rrep.final_dst, ctx_.sim.now());
  if (back == nullptr) {
    ctx_.metrics.record_rrep_dropped();
    return;
  }
  const NodeId next = back->next_hop;
  nodes_.at(node).routes.refresh(rrep.final_dst, ctx_.sim.now() + config_.route_lifetime);
  if (!ctx_.radio.unicast(node, next, rrep).delivered()) {
    ctx_.metrics.record_rrep_dropped();
    if (hooks_.control_link_failure) hooks_.control_link_failure(node, next);
  }
}

void RouteDiscovery::handle_rreq(NodeId node, const Packet& rreq, NodeId from) {
  const SimTime now = ctx_.sim.now();
  auto& state = nodes_.at(node);
  const AodvHeader& h = rreq.aodv();
  if (rreq.origin == node) return;
  if (!state.seen.insert(rreq.origin, h.rreq_id, now)) return;

  // Reverse path toward the requester through the neighbor that delivered
  // the first copy of this flood.
  state.routes.offer({rreq.origin, from, h.hop_count + 1, h.origin_seq, now + config_.route_lifetime, true}, now);

  if (node == rreq.final_dst) {
    state.own_seq = std::max(state.own_seq + 1, h.dst_seq);
    Packet rrep = control(PacketKind::Rrep, node, rreq.origin);
    rrep.aodv().dst_seq = state.own_seq;
    rrep.aodv().hop_count = 0;
    send_rrep(node, std::move(rrep));
  } else if (const RouteEntry* fwd = state.routes.lookup(rreq.final_dst, now);
             fwd != nullptr && fwd->dst_seq >= h.dst_seq && fwd->next_hop != from) {
    Packet rrep = control(PacketKind::Rrep, rreq.final_dst, rreq.origin);
    rrep.aodv().dst_seq = fwd->dst_seq;
    rrep.aodv().hop_count = fwd->hop_count;
    send_rrep(node, std::move(rrep));
  } else if (rreq.ttl > 1) {
    Packet next = rreq;
    --next.ttl;
    ++next.aodv().hop_count;
    ctx_.radio.broadcast(node, next);
  }

  complete_if_ready(node, rreq.origin);
}

void RouteDiscovery::handle_rrep(NodeId node, const Packet& rrep, NodeId from) {
  const SimTime now = ctx_.sim.now();
  auto& state = nodes_.at(node);
  const AodvHeader& h = rrep.aodv();
  const NodeId subject = rrep.origin;

  state.routes.offer({subject, from, h.hop_count + 1, h.dst_seq, now + config_.route_lifetime, true}, now);

  if (node != rrep.final_dst) {
    if (rrep.ttl > 1) {
      Packet next = rrep;
      --next.ttl;
      ++next.aodv().hop_count;
      send_rrep(node, std::move(next));
    } else {
      ctx_.metrics.record_rrep_dropped();
    }
  }
  complete_if_ready(node, subject);
}

}  // namespace manet
