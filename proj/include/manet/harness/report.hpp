#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "manet/harness/sweep.hpp"
#include "manet/traffic/metrics.hpp"

namespace manet {

/// Exact column order of the result CSV.
const std::vector<std::string>& csv_columns();

std::string csv_header();
/// One CSV line (no newline). Doubles use the shortest round-trip form;
/// an absent mean delay is an empty field.
std::string csv_row(const MetricsRow& row);

void write_csv(std::ostream& os, const std::vector<MetricsRow>& rows);

/// Reads rows written by write_csv. Lines starting with `#` are skipped and
/// `throughput` is accepted as a header alias for `delivery_ratio`.
/// Throws ParseError with the offending line.
std::vector<MetricsRow> read_csv(std::istream& is);

/// Rebuilds the aggregate of a sweep from its rows alone, grouping by the
/// row label that corresponds to `axis`. Values and protocols keep their
/// first-appearance order.
AggregateTable aggregate_rows(const std::vector<MetricsRow>& rows, SweepAxis axis);

/// Aligned mean ± sample standard deviation of delivery ratio, mean delay
/// and transmissions, one line per axis value and one column group per protocol.
std::string render_table(const AggregateTable& table);

/// Writes `text` to `path`; throws IoError on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace manet
