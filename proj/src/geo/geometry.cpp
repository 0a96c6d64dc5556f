#include "manet/geo/geometry.hpp"

#include <cmath>

#include "manet/errors.hpp"

namespace manet {

double dist_sq(Position a, Position b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double dist(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

double ccw_sweep(Position pivot, Position reference, Position candidate) {
  if (reference == pivot || candidate == pivot) throw DegenerateEdge("zero-length edge at pivot");
  const double ref = std::atan2(reference.y - pivot.y, reference.x - pivot.x);
  const double cand = std::atan2(candidate.y - pivot.y, candidate.x - pivot.x);
  double a = cand - ref;
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double ccw_angle(const Segment& reference_edge, const Segment& candidate_edge) {
  if (reference_edge.from == reference_edge.to || candidate_edge.from == candidate_edge.to) {
    throw DegenerateEdge("zero-length edge");
  }
  if (!(reference_edge.to == candidate_edge.from)) throw DegenerateEdge("edges do not share a pivot");
  return ccw_sweep(reference_edge.to, reference_edge.from, candidate_edge.to);
}

std::optional<Position> segment_intersection(const Segment& a, const Segment& b) {
  const double rx = a.to.x - a.from.x, ry = a.to.y - a.from.y;
  const double sx = b.to.x - b.from.x, sy = b.to.y - b.from.y;
  const double denom = rx * sy - ry * sx;
  if (denom == 0.0) return std::nullopt;
  const double qpx = b.from.x - a.from.x, qpy = b.from.y - a.from.y;
  const double t = (qpx * sy - qpy * sx) / denom;
  const double u = (qpx * ry - qpy * rx) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return Position{a.from.x + t * rx, a.from.y + t * ry};
}

bool strictly_inside_diametral_circle(Position u, Position v, Position w) {
  // |w - c|^2 < r^2 with c the midpoint, expanded to (w-u).(w-v) < 0 so the
  // boundary case is exact for points on the circle.
  return (w.x - u.x) * (w.x - v.x) + (w.y - u.y) * (w.y - v.y) < 0.0;
}

}  // namespace manet
