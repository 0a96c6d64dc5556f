#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "manet/sim/hash.hpp"
#include "manet/sim/time.hpp"

namespace manet {

enum class EventKind : std::uint8_t { PacketArrival, TimerExpiry, TrafficEmit, BeaconTick, MobilityCheckpoint };

/// A pending action. The kind and target are bookkeeping for the dispatch log;
/// the kind-specific payload lives in the captured action.
struct Event {
  SimTime fire_at;
  EventKind kind = EventKind::TimerExpiry;
  NodeId target = kNoNode;
  std::function<void()> action;
};

/// Identifies one scheduled event for cancellation.
struct EventHandle {
  SimTime fire_at;
  std::uint64_t seq = 0;
  bool valid = false;
};

struct DispatchRecord {
  SimTime fire_at;
  std::uint64_t seq;
  EventKind kind;
  NodeId target;

  friend bool operator==(const DispatchRecord&, const DispatchRecord&) = default;
};

/// Single-threaded discrete-event loop. Events fire in (fire_at, seq) order,
/// where seq is the insertion counter, so simultaneous events run FIFO.
class Simulator {
 public:
  SimTime now() const { return now_; }

  /// Throws SchedulingInPast when `event.fire_at < now()`.
  EventHandle schedule(Event event);
  EventHandle schedule_at(SimTime at, EventKind kind, NodeId target, std::function<void()> action) {
    return schedule(Event{at, kind, target, std::move(action)});
  }
  EventHandle schedule_in(SimTime delay, EventKind kind, NodeId target, std::function<void()> action) {
    return schedule(Event{now_ + delay, kind, target, std::move(action)});
  }

  /// Returns false if the event already fired or was cancelled.
  bool cancel(EventHandle& handle);

  /// Dispatches every event with fire_at <= t_end, then sets the clock to t_end.
  std::uint64_t run_until(SimTime t_end);

  std::size_t pending() const { return queue_.size(); }
  std::uint64_t dispatched() const { return dispatched_; }

  /// Fingerprint of every dispatched (fire_at, seq, kind, target), in order.
  std::uint64_t log_hash() const { return log_hash_.value(); }

  void keep_log(bool on) { keep_log_ = on; }
  const std::vector<DispatchRecord>& log() const { return log_; }

 private:
  using Key = std::pair<std::int64_t, std::uint64_t>;

  std::map<Key, Event> queue_;
  SimTime now_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  Fnv1a log_hash_;
  bool keep_log_ = false;
  std::vector<DispatchRecord> log_;
};

}  // namespace manet
