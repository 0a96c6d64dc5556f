#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace manet {

/// A named, seeded random substream.
///
/// The engine is `std::mt19937_64` seeded through `std::seed_seq` from the
/// run seed and a hash of the label; both are fully specified by the standard,
/// and every draw below is built from raw engine output, so sequences are
/// identical across platforms and standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). `n` must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
};

/// Convenience factory matching the per-consumer stream naming used by the
/// harness ("mobility", "traffic", "pairs", "jitter", "beacon/<node>", ...).
inline RngStream rng_stream(std::uint64_t seed, std::string_view label) { return RngStream(seed, label); }

}  // namespace manet
