#pragma once

#include <cstdint>
#include <vector>

#include "manet/geo/geometry.hpp"
#include "manet/sim/rng.hpp"
#include "manet/sim/time.hpp"

namespace manet {

struct Area {
  double width = 1000.0;
  double height = 1000.0;

  bool contains(Position p) const { return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height; }
};

/// One straight-line movement followed by a pause at its endpoint.
struct Leg {
  SimTime depart;
  Position from;
  Position to;
  double speed = 1.0;  // m/s, > 0
  SimTime arrive;      // depart + |to - from| / speed, rounded to the microsecond
  SimTime pause_after;
};

/// Piecewise-linear motion of one node over [0, duration].
///
/// Legs are contiguous: `legs[i].arrive + legs[i].pause_after == legs[i+1].depart`.
/// A leg with `from == to` models the initial wait.
struct WaypointTrace {
  NodeId node = 0;
  SimTime duration;
  std::vector<Leg> legs;

  /// Throws OutOfTraceRange when `t` is negative or past `duration`.
  Position position_at(SimTime t) const;
};

/// Random waypoint: start uniform over the area, wait `pause`, then repeatedly
/// travel at constant `speed` to a uniform waypoint and wait `pause` there.
WaypointTrace random_waypoint_trace(NodeId node, Area area, double speed, double pause, double duration,
                                    RngStream& rng);

/// A node that never moves.
WaypointTrace static_trace(NodeId node, Position at, double duration);

/// Builds the leg list for an explicit waypoint sequence starting at t = 0.
WaypointTrace waypoint_trace(NodeId node, Position start, const std::vector<Position>& waypoints, double speed,
                             double pause, double duration);

inline Position position_at(const WaypointTrace& trace, SimTime t) { return trace.position_at(t); }

std::uint64_t trace_hash(const std::vector<WaypointTrace>& traces);

}  // namespace manet
