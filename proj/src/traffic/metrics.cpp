#include "manet/traffic/metrics.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "manet/errors.hpp"

namespace manet {

std::string_view to_string(DropCause cause) {
  switch (cause) {
    case DropCause::Ttl: return "ttl";
    case DropCause::LinkFailure: return "link_failure";
    case DropCause::DiscoveryTimeout: return "discovery_timeout";
    case DropCause::Buffer: return "buffer";
    case DropCause::PerimeterExhausted: return "perimeter_exhausted";
  }
  return "?";
}

std::uint64_t MetricsRow::drops_total() const { return std::accumulate(drops.begin(), drops.end(), std::uint64_t{0}); }

bool operator==(const MetricsRow& a, const MetricsRow& b) {
  return a.labels.protocol == b.labels.protocol && a.labels.scenario_id == b.labels.scenario_id &&
         a.labels.seed == b.labels.seed && a.labels.n_nodes == b.labels.n_nodes &&
         a.labels.pause_s == b.labels.pause_s && a.labels.rate_pps == b.labels.rate_pps && a.sent == b.sent &&
         a.delivered == b.delivered && a.delivery_ratio == b.delivery_ratio && a.mean_delay_ms == b.mean_delay_ms &&
         a.transmissions_total == b.transmissions_total && a.drops == b.drops && a.in_flight == b.in_flight;
}

bool accounting_holds(const MetricsRow& row) {
  return row.delivered <= row.sent && row.delivered + row.drops_total() + row.in_flight == row.sent;
}

namespace {

MetricsRow make_row(const RowLabels& labels, std::uint64_t sent, std::uint64_t delivered, std::int64_t delay_sum_us,
                    std::uint64_t transmissions, const std::array<std::uint64_t, kDropCauseCount>& drops,
                    std::uint64_t in_flight) {
  MetricsRow row;
  row.labels = labels;
  row.sent = sent;
  row.delivered = delivered;
  row.delivery_ratio = sent == 0 ? 0.0 : static_cast<double>(delivered) / static_cast<double>(sent);
  if (delivered > 0) {
    row.mean_delay_ms = static_cast<double>(delay_sum_us) / static_cast<double>(delivered) / 1000.0;
  }
  row.transmissions_total = transmissions;
  row.drops = drops;
  row.in_flight = in_flight;
  return row;
}

}  // namespace

void Metrics::record_origination(const Packet& packet, SimTime now) {
  ++sent_;
  ++outstanding_;
  state_[packet.uid] = State::Outstanding;
  if (options_.keep_log) log_.push_back({now, LogRecord::Type::Originate, packet.kind, false, {}, packet.uid, packet.created_at});
}

void Metrics::record_transmission(PacketKind kind, bool broadcast, NodeId sender, SimTime now) {
  ++transmissions_;
  ++tx_by_kind_[static_cast<std::size_t>(kind)];
  if (sender >= tx_by_sender_.size()) tx_by_sender_.resize(sender + 1, 0);
  ++tx_by_sender_[sender];
  if (options_.keep_log) log_.push_back({now, LogRecord::Type::Transmit, kind, broadcast, {}, 0, {}});
}

void Metrics::record_delivery(const Packet& packet, SimTime now) {
  auto it = state_.find(packet.uid);
  if (it == state_.end()) throw std::logic_error("delivery of a packet that was never originated");
  if (it->second == State::Delivered) {
    throw DuplicateDelivery("packet " + std::to_string(packet.uid) + " delivered twice");
  }
  if (it->second == State::Dropped) throw std::logic_error("delivery of a dropped packet");
  it->second = State::Delivered;
  --outstanding_;
  ++delivered_;
  delay_sum_us_ += (now - packet.created_at).ticks;
  if (options_.keep_log) log_.push_back({now, LogRecord::Type::Deliver, packet.kind, false, {}, packet.uid, packet.created_at});
}

void Metrics::record_drop(const Packet& packet, DropCause cause, SimTime now) {
  auto it = state_.find(packet.uid);
  if (it == state_.end() || it->second != State::Outstanding) {
    throw std::logic_error("drop of packet " + std::to_string(packet.uid) + " that is not outstanding");
  }
  it->second = State::Dropped;
  --outstanding_;
  ++drops_[static_cast<std::size_t>(cause)];
  if (options_.keep_log) log_.push_back({now, LogRecord::Type::Drop, packet.kind, false, cause, packet.uid, packet.created_at});
}

void Metrics::record_hop(PacketId uid, const HopRecord& hop) {
  if (options_.keep_hops) hops_[uid].push_back(hop);
}

bool Metrics::was_delivered(PacketId uid) const {
  auto it = state_.find(uid);
  return it != state_.end() && it->second == State::Delivered;
}

MetricsRow Metrics::finalize(const RowLabels& labels) const {
  return make_row(labels, sent_, delivered_, delay_sum_us_, transmissions_, drops_, outstanding_);
}

MetricsRow replay_metrics(const RunLog& log, const RowLabels& labels) {
  std::uint64_t sent = 0, delivered = 0, transmissions = 0;
  std::int64_t delay_sum = 0;
  std::array<std::uint64_t, kDropCauseCount> drops{};
  std::unordered_set<PacketId> open;
  for (const auto& r : log) {
    switch (r.type) {
      case LogRecord::Type::Originate:
        ++sent;
        open.insert(r.uid);
        break;
      case LogRecord::Type::Transmit:
        ++transmissions;
        break;
      case LogRecord::Type::Deliver:
        ++delivered;
        delay_sum += (r.t - r.created_at).ticks;
        open.erase(r.uid);
        break;
      case LogRecord::Type::Drop:
        ++drops[static_cast<std::size_t>(r.cause)];
        open.erase(r.uid);
        break;
    }
  }
  return make_row(labels, sent, delivered, delay_sum, transmissions, drops, open.size());
}

void write_log(std::ostream& os, const RunLog& log) {
  for (const auto& r : log) {
    os << r.t.ticks << ',' << static_cast<int>(r.type) << ',' << static_cast<int>(r.kind) << ','
       << (r.broadcast ? 1 : 0) << ',' << static_cast<int>(r.cause) << ',' << r.uid << ',' << r.created_at.ticks
       << '\n';
  }
  if (!os) throw IoError("failed to write run log");
}

RunLog read_log(std::istream& is) {
  RunLog log;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    LogRecord r;
    long long t = 0, created = 0;
    int type = 0, kind = 0, bcast = 0, cause = 0;
    unsigned long long uid = 0;
    char c1, c2, c3, c4, c5, c6;
    if (!(ss >> t >> c1 >> type >> c2 >> kind >> c3 >> bcast >> c4 >> cause >> c5 >> uid >> c6 >> created)) {
      throw IoError("malformed run log line: " + line);
    }
    r.t = SimTime{t};
    r.type = static_cast<LogRecord::Type>(type);
    r.kind = static_cast<PacketKind>(kind);
    r.broadcast = bcast != 0;
    r.cause = static_cast<DropCause>(cause);
    r.uid = uid;
    r.created_at = SimTime{created};
    log.push_back(r);
  }
  return log;
}

}  // namespace manet
