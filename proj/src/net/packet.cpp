#include "manet/net/packet.hpp"

namespace manet {

std::string_view to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::Data: return "DATA";
    case PacketKind::Rreq: return "RREQ";
    case PacketKind::Rrep: return "RREP";
    case PacketKind::Rerr: return "RERR";
    case PacketKind::Beacon: return "BEACON";
    case PacketKind::Hello: return "HELLO";
  }
  return "?";
}

}  // namespace manet
