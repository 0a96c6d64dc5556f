#include "manet/geo/mobility.hpp"

#include <algorithm>
#include <string>

#include "manet/errors.hpp"
#include "manet/sim/hash.hpp"

namespace manet {

namespace {

SimTime travel_time(Position a, Position b, double speed) { return SimTime::from_seconds(dist(a, b) / speed); }

void append_leg(WaypointTrace& trace, SimTime depart, Position from, Position to, double speed, SimTime pause) {
  Leg leg{depart, from, to, speed, depart + travel_time(from, to, speed), pause};
  trace.legs.push_back(leg);
}

}  // namespace

Position WaypointTrace::position_at(SimTime t) const {
  if (t.ticks < 0 || t > duration) {
    throw OutOfTraceRange("t=" + std::to_string(t.ticks) + "us outside trace of node " + std::to_string(node));
  }
  // Last leg departing at or before t.
  auto it = std::upper_bound(legs.begin(), legs.end(), t, [](SimTime v, const Leg& l) { return v < l.depart; });
  if (it == legs.begin()) return legs.front().from;
  const Leg& leg = *std::prev(it);
  if (t >= leg.arrive || leg.arrive == leg.depart) return leg.to;
  const double f = static_cast<double>((t - leg.depart).ticks) / static_cast<double>((leg.arrive - leg.depart).ticks);
  // Convex combination of two in-area points; the clamp only absorbs rounding.
  const double x = leg.from.x + (leg.to.x - leg.from.x) * f;
  const double y = leg.from.y + (leg.to.y - leg.from.y) * f;
  return Position{std::clamp(x, std::min(leg.from.x, leg.to.x), std::max(leg.from.x, leg.to.x)),
                  std::clamp(y, std::min(leg.from.y, leg.to.y), std::max(leg.from.y, leg.to.y))};
}

WaypointTrace random_waypoint_trace(NodeId node, Area area, double speed, double pause, double duration,
                                    RngStream& rng) {
  WaypointTrace trace;
  trace.node = node;
  trace.duration = SimTime::from_seconds(duration);
  const SimTime pause_t = SimTime::from_seconds(pause);

  Position here{rng.uniform(0.0, area.width), rng.uniform(0.0, area.height)};
  append_leg(trace, SimTime{}, here, here, speed, pause_t);
  while (trace.legs.back().arrive + trace.legs.back().pause_after < trace.duration) {
    const SimTime depart = trace.legs.back().arrive + trace.legs.back().pause_after;
    const Position next{rng.uniform(0.0, area.width), rng.uniform(0.0, area.height)};
    append_leg(trace, depart, here, next, speed, pause_t);
    here = next;
  }
  return trace;
}

WaypointTrace static_trace(NodeId node, Position at, double duration) {
  WaypointTrace trace;
  trace.node = node;
  trace.duration = SimTime::from_seconds(duration);
  append_leg(trace, SimTime{}, at, at, 1.0, trace.duration);
  return trace;
}

WaypointTrace waypoint_trace(NodeId node, Position start, const std::vector<Position>& waypoints, double speed,
                             double pause, double duration) {
  WaypointTrace trace;
  trace.node = node;
  trace.duration = SimTime::from_seconds(duration);
  const SimTime pause_t = SimTime::from_seconds(pause);
  append_leg(trace, SimTime{}, start, start, speed, pause_t);
  Position here = start;
  for (Position next : waypoints) {
    const SimTime depart = trace.legs.back().arrive + trace.legs.back().pause_after;
    append_leg(trace, depart, here, next, speed, pause_t);
    here = next;
  }
  // Park at the last waypoint for whatever remains of the run.
  Leg& last = trace.legs.back();
  if (last.arrive + last.pause_after < trace.duration) last.pause_after = trace.duration - last.arrive;
  return trace;
}

std::uint64_t trace_hash(const std::vector<WaypointTrace>& traces) {
  Fnv1a h;
  for (const auto& t : traces) {
    h.u64(t.node);
    h.u64(static_cast<std::uint64_t>(t.duration.ticks));
    for (const auto& l : t.legs) {
      h.u64(static_cast<std::uint64_t>(l.depart.ticks));
      h.f64(l.from.x);
      h.f64(l.from.y);
      h.f64(l.to.x);
      h.f64(l.to.y);
      h.f64(l.speed);
      h.u64(static_cast<std::uint64_t>(l.pause_after.ticks));
    }
  }
  return h.value();
}

}  // namespace manet
