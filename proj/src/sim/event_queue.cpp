#include "manet/sim/event_queue.hpp"

#include <string>

#include "manet/errors.hpp"

namespace manet {

EventHandle Simulator::schedule(Event event) {
  if (event.fire_at < now_) {
    throw SchedulingInPast("event at " + std::to_string(event.fire_at.ticks) + "us scheduled at " +
                           std::to_string(now_.ticks) + "us");
  }
  const std::uint64_t seq = next_seq_++;
  const SimTime at = event.fire_at;
  queue_.emplace(Key{at.ticks, seq}, std::move(event));
  return EventHandle{at, seq, true};
}

bool Simulator::cancel(EventHandle& handle) {
  if (!handle.valid) return false;
  handle.valid = false;
  return queue_.erase(Key{handle.fire_at.ticks, handle.seq}) > 0;
}

std::uint64_t Simulator::run_until(SimTime t_end) {
  std::uint64_t count = 0;
  while (!queue_.empty()) {
    auto it = queue_.begin();
    if (it->first.first > t_end.ticks) break;
    const std::uint64_t seq = it->first.second;
    Event event = std::move(it->second);
    queue_.erase(it);
    now_ = event.fire_at;

    const DispatchRecord rec{event.fire_at, seq, event.kind, event.target};
    log_hash_.u64(static_cast<std::uint64_t>(rec.fire_at.ticks));
    log_hash_.u64(rec.seq);
    log_hash_.u64(static_cast<std::uint64_t>(rec.kind));
    log_hash_.u64(rec.target);
    if (keep_log_) log_.push_back(rec);

    ++count;
    ++dispatched_;
    if (event.action) event.action();
  }
  if (t_end > now_) now_ = t_end;
  return count;
}

}  // namespace manet
