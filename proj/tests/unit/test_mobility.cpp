#include <doctest.h>

#include <cmath>

#include "manet/errors.hpp"
#include "manet/geo/mobility.hpp"
#include "manet/sim/rng.hpp"

using namespace manet;

TEST_CASE("pause as long as the run keeps the node still") {
  RngStream r = rng_stream(5, "mobility/0");
  const auto tr = random_waypoint_trace(0, Area{}, 20.0, 500.0, 500.0, r);
  const Position p0 = tr.position_at(SimTime{});
  for (int t = 0; t <= 500; t += 25) CHECK(tr.position_at(SimTime::from_seconds(t)) == p0);
}

TEST_CASE("explicit waypoints: d = v t, midpoint and pause") {
  // Start at (0,0), wait 1 s, move to (100,0) at 20 m/s, wait 1 s there.
  const auto tr = waypoint_trace(0, {0, 0}, {{100, 0}}, 20.0, 1.0, 10.0);
  REQUIRE(tr.legs.size() >= 2);
  const Leg& move = tr.legs[1];
  CHECK(move.depart == SimTime::from_seconds(1));
  CHECK(move.arrive - move.depart == SimTime::from_seconds(5));
  CHECK(tr.position_at(move.depart) == Position{0, 0});
  const Position mid = tr.position_at(move.depart + SimTime::from_millis(2500));
  CHECK(mid.x == doctest::Approx(50.0));
  CHECK(mid.y == doctest::Approx(0.0));
  CHECK(tr.position_at(move.arrive + SimTime::from_millis(500)) == Position{100, 0});
  CHECK(tr.position_at(SimTime::from_seconds(10)) == Position{100, 0});
}

TEST_CASE("position_at outside the trace throws") {
  const auto tr = static_trace(0, {1, 2}, 10.0);
  CHECK(tr.position_at(SimTime::from_seconds(10)) == Position{1, 2});
  CHECK_THROWS_AS(tr.position_at(SimTime::from_seconds(10) + SimTime::from_micros(1)), OutOfTraceRange);
  CHECK_THROWS_AS(tr.position_at(SimTime::from_micros(-1)), OutOfTraceRange);
}

TEST_CASE("random waypoint legs are contiguous and cover the run") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RngStream r = rng_stream(seed, "mobility/0");
    const double pause = static_cast<double>(seed % 4) * 10.0;
    const auto tr = random_waypoint_trace(0, Area{}, 20.0, pause, 500.0, r);
    REQUIRE_FALSE(tr.legs.empty());
    CHECK(tr.legs.front().depart == SimTime{});
    for (std::size_t i = 0; i < tr.legs.size(); ++i) {
      const Leg& l = tr.legs[i];
      CHECK(l.speed > 0.0);
      CHECK(l.pause_after.ticks >= 0);
      CHECK(l.arrive >= l.depart);
      if (i + 1 < tr.legs.size()) CHECK(l.arrive + l.pause_after == tr.legs[i + 1].depart);
    }
    const Leg& last = tr.legs.back();
    CHECK(last.arrive + last.pause_after >= tr.duration);
  }
}

TEST_CASE("positions stay inside the area and move continuously") {
  RngStream pick = rng_stream(77, "samples");
  for (NodeId n = 0; n < 20; ++n) {
    RngStream r = rng_stream(77, "mobility/" + std::to_string(n));
    const auto tr = random_waypoint_trace(n, Area{}, 20.0, 0.0, 500.0, r);
    for (int i = 0; i < 500; ++i) {
      const SimTime t{pick.between(0, tr.duration.ticks - 1000)};
      const Position a = tr.position_at(t);
      CHECK(Area{}.contains(a));
      const Position b = tr.position_at(t + SimTime::from_millis(1));
      // Leg arrivals are rounded to the microsecond, so allow a micrometer.
      CHECK(dist(a, b) <= 20.0 * 0.001 + 1e-6);
    }
  }
}

TEST_CASE("waypoints are uniform over the area") {
  double sx = 0.0;
  double sy = 0.0;
  std::size_t n = 0;
  for (NodeId node = 0; n < 10'000; ++node) {
    RngStream r = rng_stream(1, "mobility/" + std::to_string(node));
    const auto tr = random_waypoint_trace(node, Area{}, 20.0, 0.0, 2000.0, r);
    for (const auto& l : tr.legs) {
      sx += l.to.x;
      sy += l.to.y;
      ++n;
    }
  }
  // sd of each mean ~ 1000/sqrt(12 n) ~ 2.9 m.
  CHECK(std::abs(sx / static_cast<double>(n) - 500.0) < 10.0);
  CHECK(std::abs(sy / static_cast<double>(n) - 500.0) < 10.0);
}

TEST_CASE("same seed and label give the same trace") {
  RngStream a = rng_stream(3, "mobility/4");
  RngStream b = rng_stream(3, "mobility/4");
  std::vector<WaypointTrace> ta{random_waypoint_trace(4, Area{}, 20.0, 10.0, 500.0, a)};
  std::vector<WaypointTrace> tb{random_waypoint_trace(4, Area{}, 20.0, 10.0, 500.0, b)};
  CHECK(trace_hash(ta) == trace_hash(tb));
  RngStream c = rng_stream(4, "mobility/4");
  std::vector<WaypointTrace> tc{random_waypoint_trace(4, Area{}, 20.0, 10.0, 500.0, c)};
  CHECK(trace_hash(ta) != trace_hash(tc));
}
