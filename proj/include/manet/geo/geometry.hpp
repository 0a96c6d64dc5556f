#pragma once

#include <optional>

namespace manet {

/// Planar position in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

/// Directed segment `from -> to`.
struct Segment {
  Position from;
  Position to;
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

double dist(Position a, Position b);
double dist_sq(Position a, Position b);

/// Counterclockwise sweep in [0, 2pi) from the ray pivot->reference to the ray
/// pivot->candidate. Throws DegenerateEdge when either point equals the pivot.
double ccw_sweep(Position pivot, Position reference, Position candidate);

/// Angle of the right-hand rule. `reference_edge` is the edge a packet arrived
/// on (prev -> pivot) and `candidate_edge` leaves the pivot (pivot -> next);
/// the result is measured counterclockwise from the reversed reference edge
/// (pivot -> prev). Throws DegenerateEdge for zero-length edges or edges that
/// do not share the pivot.
double ccw_angle(const Segment& reference_edge, const Segment& candidate_edge);

/// Intersection point of two closed segments, if they cross at a single point.
/// Collinear overlaps report nothing.
std::optional<Position> segment_intersection(const Segment& a, const Segment& b);

/// True when `w` lies strictly inside the circle whose diameter is (u, v).
bool strictly_inside_diametral_circle(Position u, Position v, Position w);

}  // namespace manet
