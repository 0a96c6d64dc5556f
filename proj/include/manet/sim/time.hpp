#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>

namespace manet {

/// Simulation clock value in integer microseconds since start of run.
struct SimTime {
  std::int64_t ticks = 0;

  static constexpr SimTime from_micros(std::int64_t us) { return SimTime{us}; }
  static constexpr SimTime from_millis(std::int64_t ms) { return SimTime{ms * 1000}; }
  static SimTime from_seconds(double s) { return SimTime{std::llround(s * 1e6)}; }

  constexpr double seconds() const { return static_cast<double>(ticks) / 1e6; }
  constexpr double millis() const { return static_cast<double>(ticks) / 1e3; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime o) {
    ticks += o.ticks;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ticks + b.ticks}; }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.ticks - b.ticks}; }
  friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return SimTime{a.ticks * k}; }

  friend std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.seconds() << "s"; }
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

}  // namespace manet
