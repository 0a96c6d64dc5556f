#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "manet/geo/geometry.hpp"
#include "manet/sim/time.hpp"

namespace manet {

using PacketId = std::uint64_t;

enum class PacketKind : std::uint8_t { Data, Rreq, Rrep, Rerr, Beacon, Hello };
inline constexpr std::size_t kPacketKindCount = 6;

std::string_view to_string(PacketKind kind);

/// A destination reported unreachable by a route error.
struct Unreachable {
  NodeId dst = kNoNode;
  std::uint32_t dst_seq = 0;

  friend bool operator==(const Unreachable&, const Unreachable&) = default;
};

/// Route discovery / maintenance header.
///
/// RREQ: origin = requester, final_dst = sought node.
/// RREP: origin = the route's subject (the sought node), final_dst = requester,
///       so each hop installs a route toward `origin` and forwards toward
///       `final_dst` exactly like an RREQ does in reverse.
/// RERR: origin = reporting node, `unreachable` lists lost destinations.
struct AodvHeader {
  std::uint32_t rreq_id = 0;
  std::uint32_t origin_seq = 0;
  std::uint32_t dst_seq = 0;  // 0 = unknown
  int hop_count = 0;
  std::vector<Unreachable> unreachable;
};

enum class GeoMode : std::uint8_t { Greedy, Perimeter };

using Edge = std::pair<NodeId, NodeId>;

/// Geographic forwarding header. `dst_pos` is fixed by the source.
struct GeoHeader {
  Position dst_pos;
  GeoMode mode = GeoMode::Greedy;
  Position loc_entry;               // where perimeter mode began
  Position face_point;              // where the current face was entered
  std::optional<Edge> first_edge;   // first edge walked on the current face
};

enum class CrpMode : std::uint8_t { GeoGreedy, AodvRoute };

/// Header of data packets under the combined protocol.
struct CrpHeader {
  CrpMode mode = CrpMode::GeoGreedy;
  Position dst_pos;
};

struct BeaconHeader {
  Position pos;
};

using RoutingHeader = std::variant<std::monostate, AodvHeader, GeoHeader, CrpHeader, BeaconHeader>;

struct Packet {
  PacketId uid = 0;
  PacketKind kind = PacketKind::Data;
  NodeId origin = kNoNode;
  NodeId final_dst = kNoNode;
  SimTime created_at;
  int ttl = 0;
  std::uint32_t size_bytes = 0;
  RoutingHeader header;

  AodvHeader& aodv() { return std::get<AodvHeader>(header); }
  const AodvHeader& aodv() const { return std::get<AodvHeader>(header); }
  GeoHeader& geo() { return std::get<GeoHeader>(header); }
  const GeoHeader& geo() const { return std::get<GeoHeader>(header); }
  CrpHeader& crp() { return std::get<CrpHeader>(header); }
  const CrpHeader& crp() const { return std::get<CrpHeader>(header); }
};

}  // namespace manet
