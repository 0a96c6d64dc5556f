#include "manet/routing/neighbor_table.hpp"

#include <string>

namespace manet {

void NeighborTable::update(NodeId neighbor, Position pos, SimTime heard) {
  entries_[neighbor] = NeighborEntry{neighbor, pos, heard};
}

void NeighborTable::purge(SimTime now, SimTime timeout) {
  std::erase_if(entries_, [&](const auto& kv) { return now - kv.second.last_heard > timeout; });
}

const NeighborEntry* NeighborTable::find(NodeId neighbor) const {
  auto it = entries_.find(neighbor);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<NeighborEntry> NeighborTable::entries() const {
  std::vector<NeighborEntry> out;
  out.reserve(entries_.size());
  for (const auto& [id, e] : entries_) out.push_back(e);
  return out;
}

BeaconService::BeaconService(RoutingContext ctx, BeaconConfig config)
    : ctx_(ctx), config_(config), tables_(ctx.radio.node_count()) {
  rng_.reserve(tables_.size());
  for (NodeId n = 0; n < tables_.size(); ++n) rng_.emplace_back(ctx_.seed, "beacon/" + std::to_string(n));
}

void BeaconService::start() {
  for (NodeId n = 0; n < tables_.size(); ++n) {
    const SimTime first{rng_[n].between(0, config_.interval.ticks - 1)};
    ctx_.sim.schedule_at(first, EventKind::BeaconTick, n, [this, n] { beacon_tick(n); });
  }
}

void BeaconService::beacon_tick(NodeId node) {
  Packet beacon;
  beacon.uid = ctx_.metrics.next_uid();
  beacon.kind = PacketKind::Beacon;
  beacon.origin = node;
  beacon.final_dst = kNoNode;
  beacon.created_at = ctx_.sim.now();
  beacon.ttl = 1;
  beacon.size_bytes = config_.size;
  beacon.header = BeaconHeader{ctx_.radio.position(node, ctx_.sim.now())};
  ctx_.radio.broadcast(node, beacon);

  const SimTime next = config_.interval + SimTime{rng_[node].between(-config_.jitter.ticks, config_.jitter.ticks)};
  ctx_.sim.schedule_in(next, EventKind::BeaconTick, node, [this, node] { beacon_tick(node); });
}

void BeaconService::handle_beacon(NodeId node, const Packet& beacon, NodeId from) {
  tables_.at(node).update(from, std::get<BeaconHeader>(beacon.header).pos, ctx_.sim.now());
}

std::vector<NeighborEntry> BeaconService::fresh_neighbors(NodeId node) {
  auto& t = tables_.at(node);
  t.purge(ctx_.sim.now(), config_.neighbor_timeout);
  return t.entries();
}

}  // namespace manet
