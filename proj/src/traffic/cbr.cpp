#include "manet/traffic/cbr.hpp"

#include <stdexcept>

#include "manet/sim/hash.hpp"

namespace manet {

std::uint64_t CbrStream::packet_count() const {
  if (stop_at < start_at || interval.ticks <= 0) return 0;
  return static_cast<std::uint64_t>((stop_at - start_at).ticks / interval.ticks) + 1;
}

std::vector<CbrStream> make_streams(const StreamPlan& plan, std::uint32_t n_nodes, RngStream& pair_rng,
                                    RngStream& start_rng) {
  if (n_nodes < 2) throw std::invalid_argument("make_streams needs at least two nodes");
  if (plan.n_streams < 1) throw std::invalid_argument("make_streams needs at least one stream");
  if (plan.interval.ticks <= 0) throw std::invalid_argument("stream interval must be positive");

  std::vector<CbrStream> out;
  out.reserve(plan.n_streams);
  for (std::uint32_t i = 0; i < plan.n_streams; ++i) {
    const auto src = static_cast<NodeId>(pair_rng.below(n_nodes));
    auto dst = static_cast<NodeId>(pair_rng.below(n_nodes - 1));
    if (dst >= src) ++dst;
    CbrStream s;
    s.src = src;
    s.dst = dst;
    s.packet_size = plan.packet_size;
    s.interval = plan.interval;
    s.start_at = plan.window_start;
    if (plan.window_length.ticks > 0) s.start_at += SimTime{start_rng.between(0, plan.window_length.ticks - 1)};
    s.stop_at = plan.stop_at;
    out.push_back(s);
  }
  return out;
}

std::uint64_t streams_hash(const std::vector<CbrStream>& streams) {
  Fnv1a h;
  for (const auto& s : streams) {
    h.u64(s.src);
    h.u64(s.dst);
    h.u64(s.packet_size);
    h.u64(static_cast<std::uint64_t>(s.interval.ticks));
    h.u64(static_cast<std::uint64_t>(s.start_at.ticks));
    h.u64(static_cast<std::uint64_t>(s.stop_at.ticks));
  }
  return h.value();
}

}  // namespace manet
