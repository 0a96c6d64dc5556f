#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "manet/geo/mobility.hpp"
#include "manet/net/packet.hpp"
#include "manet/sim/event_queue.hpp"
#include "manet/sim/rng.hpp"

namespace manet {

class Metrics;

struct RadioConfig {
  double range = 250.0;                    // m, unit disk, boundary inclusive
  std::uint64_t bandwidth = 2'000'000;     // bit/s
  SimTime processing_delay = SimTime::from_millis(1);
  SimTime jitter_max{};                    // per-receiver uniform [0, jitter_max]
};

struct TxOutcome {
  enum class Status { Delivered, LinkFailure };
  Status status = Status::LinkFailure;
  std::optional<SimTime> receive_time;

  bool delivered() const { return status == Status::Delivered; }
};

struct Reception {
  NodeId receiver;
  SimTime receive_time;
};

/// Serialization delay of `size_bytes` at `bandwidth`, rounded to the microsecond.
SimTime tx_delay(std::uint32_t size_bytes, std::uint64_t bandwidth);

/// Ideal unit-disk channel: no collisions, no loss other than range.
///
/// Every send primitive reports exactly one transmission to the metrics sink,
/// whatever the number of receivers or the unicast outcome. Link failures are
/// detected from positions at send time and reported synchronously.
class Radio {
 public:
  using Receiver = std::function<void(NodeId to, const Packet& packet, NodeId from)>;

  Radio(const std::vector<WaypointTrace>& traces, RadioConfig config, Simulator& sim, Metrics& metrics,
        RngStream jitter);

  void set_receiver(Receiver receiver) { receiver_ = std::move(receiver); }

  const RadioConfig& config() const { return config_; }
  std::size_t node_count() const { return traces_.size(); }

  Position position(NodeId node, SimTime t) const { return traces_.at(node).position_at(t); }
  bool in_range(NodeId a, NodeId b, SimTime t) const;
  std::vector<NodeId> neighbors(NodeId node, SimTime t) const;

  SimTime tx_delay(std::uint32_t size_bytes) const { return manet::tx_delay(size_bytes, config_.bandwidth); }
  /// tx_delay + processing, without jitter.
  SimTime hop_delay(std::uint32_t size_bytes) const { return tx_delay(size_bytes) + config_.processing_delay; }

  std::vector<Reception> broadcast(NodeId sender, const Packet& packet);
  TxOutcome unicast(NodeId sender, NodeId next_hop, const Packet& packet);

  /// DATA packets scheduled for reception but not yet received.
  std::size_t data_in_air() const { return data_in_air_; }

 private:
  SimTime receive_time(std::uint32_t size_bytes);
  void deliver_later(NodeId to, const Packet& packet, NodeId from, SimTime at);

  const std::vector<WaypointTrace>& traces_;
  RadioConfig config_;
  Simulator& sim_;
  Metrics& metrics_;
  RngStream jitter_;
  Receiver receiver_;
  std::size_t data_in_air_ = 0;
};

}  // namespace manet
