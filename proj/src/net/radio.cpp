#include "manet/net/radio.hpp"

#include <stdexcept>

#include "manet/traffic/metrics.hpp"

namespace manet {

SimTime tx_delay(std::uint32_t size_bytes, std::uint64_t bandwidth) {
  const std::uint64_t bits_us = static_cast<std::uint64_t>(size_bytes) * 8u * 1'000'000u;
  return SimTime::from_micros(static_cast<std::int64_t>((bits_us + bandwidth / 2) / bandwidth));
}

Radio::Radio(const std::vector<WaypointTrace>& traces, RadioConfig config, Simulator& sim, Metrics& metrics,
             RngStream jitter)
    : traces_(traces), config_(config), sim_(sim), metrics_(metrics), jitter_(std::move(jitter)) {}

bool Radio::in_range(NodeId a, NodeId b, SimTime t) const {
  return dist_sq(position(a, t), position(b, t)) <= config_.range * config_.range;
}

std::vector<NodeId> Radio::neighbors(NodeId node, SimTime t) const {
  const Position here = position(node, t);
  const double r2 = config_.range * config_.range;
  std::vector<NodeId> out;
  for (const auto& trace : traces_) {
    if (trace.node == node) continue;
    if (dist_sq(here, trace.position_at(t)) <= r2) out.push_back(trace.node);
  }
  return out;
}

SimTime Radio::receive_time(std::uint32_t size_bytes) {
  SimTime at = sim_.now() + hop_delay(size_bytes);
  if (config_.jitter_max.ticks > 0) at += SimTime::from_micros(jitter_.between(0, config_.jitter_max.ticks));
  return at;
}

void Radio::deliver_later(NodeId to, const Packet& packet, NodeId from, SimTime at) {
  const bool is_data = packet.kind == PacketKind::Data;
  if (is_data) ++data_in_air_;
  sim_.schedule_at(at, EventKind::PacketArrival, to, [this, to, packet, from, is_data] {
    if (is_data) --data_in_air_;
    if (receiver_) receiver_(to, packet, from);
  });
}

std::vector<Reception> Radio::broadcast(NodeId sender, const Packet& packet) {
  if (packet.size_bytes == 0) throw std::invalid_argument("broadcast of an empty packet");
  metrics_.record_transmission(packet.kind, true, sender, sim_.now());
  std::vector<Reception> out;
  for (NodeId n : neighbors(sender, sim_.now())) {
    const SimTime at = receive_time(packet.size_bytes);
    out.push_back({n, at});
    deliver_later(n, packet, sender, at);
  }
  return out;
}

TxOutcome Radio::unicast(NodeId sender, NodeId next_hop, const Packet& packet) {
  if (next_hop == sender) throw std::invalid_argument("unicast to self");
  metrics_.record_transmission(packet.kind, false, sender, sim_.now());
  if (!in_range(sender, next_hop, sim_.now())) return TxOutcome{TxOutcome::Status::LinkFailure, std::nullopt};
  const SimTime at = receive_time(packet.size_bytes);
  deliver_later(next_hop, packet, sender, at);
  return TxOutcome{TxOutcome::Status::Delivered, at};
}

}  // namespace manet
