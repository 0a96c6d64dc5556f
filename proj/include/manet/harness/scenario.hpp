#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "manet/geo/mobility.hpp"
#include "manet/net/radio.hpp"
#include "manet/routing/neighbor_table.hpp"
#include "manet/routing/route_discovery.hpp"

namespace manet {

enum class ProtocolKind : std::uint8_t { Aodv, Gpsr, Crp, GpsrGreedyOnly };

std::string_view to_string(ProtocolKind p);
/// nullopt for names outside the supported set.
std::optional<ProtocolKind> parse_protocol(std::string_view name);

/// Sweep defaults a scenario file may carry; command-line flags override them.
struct SweepSettings {
  std::string axis;                 // empty, or rate | pause | n_nodes | protocol
  std::vector<std::string> values;
  std::uint32_t replications = 1;
  std::vector<ProtocolKind> protocols{ProtocolKind::Aodv, ProtocolKind::Gpsr, ProtocolKind::Crp};
};

/// Full description of one experiment. Defaults reproduce the load study's
/// base point: 30 nodes on 1000 m x 1000 m, 40 s pauses at 20 m/s, 20 CBR
/// streams of 512-byte packets every 0.25 s, 500 s.
struct Scenario {
  std::string scenario_id = "default";
  ProtocolKind protocol = ProtocolKind::Crp;
  std::uint32_t n_nodes = 30;
  Area area;
  double duration = 500.0;
  std::uint64_t seed = 1;

  double speed = 20.0;
  double pause = 40.0;

  std::uint32_t n_streams = 20;
  double rate = 4.0;
  std::uint32_t packet_size = 512;
  double stream_start = 0.0;
  double stream_window = 10.0;

  RadioConfig radio;
  AodvConfig aodv;
  BeaconConfig beacon;
  bool perimeter_enabled = true;
  bool escape_cache = true;
  bool reanchor_on_route_loss = true;

  SweepSettings sweep;

  SimTime interval() const { return SimTime::from_seconds(1.0 / rate); }
};

/// Parses the line-oriented `key = value` format (`#` starts a comment).
/// Missing keys keep their defaults. Throws ParseError (with the line) for
/// malformed lines, unknown or repeated keys and unreadable values, and
/// ValidationError (naming the field) for out-of-range values.
Scenario parse_scenario(std::string_view text);

/// Sets one key as if it appeared in a scenario file; throws like parse_scenario.
void apply_setting(Scenario& scenario, std::string_view key, std::string_view value);

/// Throws ValidationError on the first invalid field.
void validate(const Scenario& scenario);

/// Every key in canonical order with its current value; parses back to an
/// equal scenario.
std::string to_text(const Scenario& scenario);

/// Keys with one-line descriptions, for documentation and `validate`.
std::vector<std::pair<std::string, std::string>> scenario_keys();

Scenario load_scenario_file(const std::string& path);

}  // namespace manet
