#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "manet/harness/scenario.hpp"
#include "manet/traffic/metrics.hpp"

namespace manet {

enum class SweepAxis : std::uint8_t { Rate, Pause, NNodes, Protocol };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);

/// A grid of runs: every axis value x protocol x replication. Replication r
/// uses seed `base.seed + r`; cells that share a seed share mobility and traffic.
struct SweepPlan {
  Scenario base;
  SweepAxis axis = SweepAxis::Pause;
  std::vector<std::string> values;
  std::uint32_t replications = 1;
  std::vector<ProtocolKind> protocols{ProtocolKind::Aodv, ProtocolKind::Gpsr, ProtocolKind::Crp};
};

/// One run of the grid, in canonical (value, protocol, replication) order.
struct SweepCell {
  std::size_t value_index = 0;
  std::size_t protocol_index = 0;
  std::uint32_t replication = 0;
  Scenario scenario;
};

/// Expands the plan; throws ValidationError for bad axis values.
std::vector<SweepCell> expand(const SweepPlan& plan);

struct SweepFailure {
  std::size_t cell = 0;
  std::string what;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  /// Same order as `cells`; empty for failed cells.
  std::vector<std::optional<MetricsRow>> rows;
  std::vector<SweepFailure> failures;

  std::vector<MetricsRow> completed_rows() const;
};

/// Runs every cell on up to `jobs` threads. Results do not depend on `jobs`.
/// A cell that throws is recorded as a failure and the sweep carries on.
/// `progress` (optional) is called after each cell from a worker thread.
SweepResult run_sweep(const SweepPlan& plan, unsigned jobs,
                      const std::function<void(std::size_t done, std::size_t total)>& progress = {});

/// Worker count: `requested` (0 = hardware concurrency) capped by the
/// MANET_LAB_JOBS environment variable when it is set.
unsigned resolve_jobs(unsigned requested);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 when n < 2
};

Summary summarize(const std::vector<double>& xs);

/// Per (axis value, protocol) summaries of a sweep's completed rows.
struct AggregateCell {
  Summary delivery_ratio;
  Summary mean_delay_ms;  // over rows that delivered something
  Summary transmissions;
};

struct AggregateTable {
  SweepAxis axis = SweepAxis::Pause;
  std::vector<std::string> values;
  std::vector<std::string> protocols;
  std::vector<std::vector<AggregateCell>> grid;  // [value][protocol]
};

AggregateTable aggregate(const SweepResult& result, const SweepPlan& plan);

}  // namespace manet
