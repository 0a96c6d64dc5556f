#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "manet/net/packet.hpp"
#include "manet/sim/time.hpp"

namespace manet {

enum class DropCause : std::uint8_t { Ttl, LinkFailure, DiscoveryTimeout, Buffer, PerimeterExhausted };
inline constexpr std::size_t kDropCauseCount = 5;

std::string_view to_string(DropCause cause);

/// Identifies the run a row belongs to.
struct RowLabels {
  std::string protocol;
  std::string scenario_id;
  std::uint64_t seed = 0;
  std::uint32_t n_nodes = 0;
  double pause_s = 0.0;
  double rate_pps = 0.0;
};

/// Result of one run. `mean_delay_ms` is absent when nothing was delivered.
struct MetricsRow {
  RowLabels labels;
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  double delivery_ratio = 0.0;
  std::optional<double> mean_delay_ms;
  std::uint64_t transmissions_total = 0;
  std::array<std::uint64_t, kDropCauseCount> drops{};
  std::uint64_t in_flight = 0;

  std::uint64_t drop(DropCause c) const { return drops[static_cast<std::size_t>(c)]; }
  std::uint64_t drops_total() const;

  friend bool operator==(const MetricsRow& a, const MetricsRow& b);
};

/// delivered <= sent and sent == delivered + drops + in_flight.
bool accounting_holds(const MetricsRow& row);

/// One entry of the per-run event log from which metrics can be recomputed.
struct LogRecord {
  enum class Type : std::uint8_t { Originate, Transmit, Deliver, Drop };
  SimTime t;
  Type type = Type::Originate;
  PacketKind kind = PacketKind::Data;
  bool broadcast = false;
  DropCause cause = DropCause::Ttl;
  PacketId uid = 0;
  SimTime created_at;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

using RunLog = std::vector<LogRecord>;

/// Recomputes a run's row from its log alone.
MetricsRow replay_metrics(const RunLog& log, const RowLabels& labels);

void write_log(std::ostream& os, const RunLog& log);
RunLog read_log(std::istream& is);

/// Why a node started an RREQ flood.
enum class FloodReason : std::uint8_t {
  Source,        // the node originated (or re-sends) the data itself
  LocalMaximum,  // greedy forwarding got stuck at the node
  RouteLoss,     // a table-routed packet found no route at the node
};

/// An RREQ flood started by `origin` looking for `dst`.
struct FloodRecord {
  SimTime t;
  NodeId origin;
  NodeId dst;
  FloodReason reason = FloodReason::Source;
};

/// A route that became usable at the discovery origin.
struct RouteRecord {
  SimTime t;
  NodeId origin;
  NodeId dst;
  int hop_count;
};

/// One forwarding decision in a DATA packet's life.
struct HopRecord {
  NodeId node;
  double dist_to_dst;  // from the deciding node's true position to the header's dst_pos
  std::uint8_t mode;   // protocol-specific routing mode used for this hop
};

/// Collects counters, diagnostics and (optionally) the event log of one run.
class Metrics {
 public:
  struct Options {
    bool keep_log = false;
    bool keep_hops = false;
  };

  Metrics() = default;
  explicit Metrics(Options options) : options_(options) {}

  PacketId next_uid() { return ++last_uid_; }

  void record_origination(const Packet& packet, SimTime now);
  /// Called once per send primitive, before its outcome is known.
  void record_transmission(PacketKind kind, bool broadcast, NodeId sender, SimTime now);
  /// Throws DuplicateDelivery if the uid was already delivered.
  void record_delivery(const Packet& packet, SimTime now);
  void record_drop(const Packet& packet, DropCause cause, SimTime now);

  MetricsRow finalize(const RowLabels& labels) const;

  std::uint64_t outstanding() const { return outstanding_; }
  std::uint64_t tx_count(PacketKind kind) const { return tx_by_kind_[static_cast<std::size_t>(kind)]; }
  const std::vector<std::uint64_t>& tx_by_sender() const { return tx_by_sender_; }

  void record_flood(const FloodRecord& r) { floods_.push_back(r); }
  void record_route(const RouteRecord& r) { routes_.push_back(r); }
  void record_local_maximum(NodeId node) { local_maxima_.push_back(node); }
  void record_rrep_dropped() { ++rrep_dropped_; }
  void record_hop(PacketId uid, const HopRecord& hop);

  const std::vector<FloodRecord>& floods() const { return floods_; }
  const std::vector<RouteRecord>& routes() const { return routes_; }
  const std::vector<NodeId>& local_maxima() const { return local_maxima_; }
  std::uint64_t rrep_dropped() const { return rrep_dropped_; }
  const std::unordered_map<PacketId, std::vector<HopRecord>>& hops() const { return hops_; }
  bool was_delivered(PacketId uid) const;
  const RunLog& log() const { return log_; }

 private:
  enum class State : std::uint8_t { Outstanding, Delivered, Dropped };

  Options options_;
  PacketId last_uid_ = 0;

  std::uint64_t sent_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t outstanding_ = 0;
  std::int64_t delay_sum_us_ = 0;
  std::uint64_t transmissions_ = 0;
  std::array<std::uint64_t, kDropCauseCount> drops_{};
  std::array<std::uint64_t, kPacketKindCount> tx_by_kind_{};
  std::vector<std::uint64_t> tx_by_sender_;
  std::unordered_map<PacketId, State> state_;

  std::vector<FloodRecord> floods_;
  std::vector<RouteRecord> routes_;
  std::vector<NodeId> local_maxima_;
  std::uint64_t rrep_dropped_ = 0;
  std::unordered_map<PacketId, std::vector<HopRecord>> hops_;
  RunLog log_;
};

}  // namespace manet
