#pragma once

#include <cstdint>
#include <vector>

#include "manet/sim/rng.hpp"
#include "manet/sim/time.hpp"

namespace manet {

/// Constant-bit-rate flow: one `packet_size` packet every `interval` from
/// `start_at` through `stop_at` inclusive.
struct CbrStream {
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t packet_size = 512;
  SimTime interval = SimTime::from_millis(250);
  SimTime start_at;
  SimTime stop_at;

  /// floor((stop - start) / interval) + 1, or 0 when the stream never starts.
  std::uint64_t packet_count() const;
};

struct StreamPlan {
  std::uint32_t n_streams = 20;
  std::uint32_t packet_size = 512;
  SimTime interval = SimTime::from_millis(250);
  SimTime window_start{};                        // first possible start time
  SimTime window_length = SimTime::from_millis(10'000);  // starts are uniform over this window
  SimTime stop_at;
};

/// Draws `plan.n_streams` (src, dst) pairs uniformly over `n_nodes` nodes with
/// src != dst, using `pair_rng`, and stream start times uniformly over the
/// start window, using `start_rng`.
std::vector<CbrStream> make_streams(const StreamPlan& plan, std::uint32_t n_nodes, RngStream& pair_rng,
                                    RngStream& start_rng);

std::uint64_t streams_hash(const std::vector<CbrStream>& streams);

}  // namespace manet
