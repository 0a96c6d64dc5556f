#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "fixtures.hpp"
#include "manet/errors.hpp"
#include "manet/harness/report.hpp"
#include "manet/harness/sweep.hpp"

using namespace manet;

namespace {

const char* kTable1 = R"(# 30 nodes on 1000 m x 1000 m, 512-byte packets every 0.25 s, 500 s
n_nodes = 30
area_width = 1000
area_height = 1000
packet_size = 512
interval = 0.25
duration = 500
)";

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string validation_field(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return {};
}

Scenario short_scenario(ProtocolKind p = ProtocolKind::Crp, double duration = 40.0) {
  Scenario s;
  s.protocol = p;
  s.duration = duration;
  s.scenario_id = "short";
  return s;
}

SweepPlan small_plan() {
  SweepPlan plan;
  plan.base = short_scenario();
  plan.base.seed = 7;
  plan.axis = SweepAxis::Pause;
  plan.values = {"0", "40"};
  plan.replications = 2;
  return plan;
}

}  // namespace

TEST_CASE("the load-study table parses to the base scenario") {
  const Scenario s = parse_scenario(kTable1);
  const Scenario d;
  CHECK(to_text(s) == to_text(d));
  CHECK(s.n_nodes == 30);
  CHECK(s.area.width == 1000.0);
  CHECK(s.area.height == 1000.0);
  CHECK(s.packet_size == 512);
  CHECK(s.rate == 4.0);
  CHECK(s.interval() == SimTime::from_millis(250));
  CHECK(s.duration == 500.0);
}

TEST_CASE("empty and comment-only files give the defaults") {
  CHECK(to_text(parse_scenario("")) == to_text(Scenario{}));
  CHECK(to_text(parse_scenario("# nothing\n\n   \n")) == to_text(Scenario{}));
}

TEST_CASE("unsupported protocols name the field") {
  CHECK(validation_field("protocol = dsr\n") == "protocol");
  CHECK(validation_field("n_nodes = 1\n") == "n_nodes");
  CHECK(validation_field("rate = 0\n") == "rate");
  CHECK(validation_field("radio_range = -5\n") == "radio_range");
  CHECK(validation_field("beacon_jitter = 1\nbeacon_interval = 1\n") == "beacon_jitter");
  CHECK(validation_field("protocols = aodv,dsr\n") == "protocols");
  Scenario s;
  CHECK_THROWS_AS(apply_setting(s, "no_such_key", "1"), ValidationError);
}

TEST_CASE("malformed files report the offending line") {
  CHECK(parse_error_line("n_nodes = 30\nbogus = 1\n") == 2);
  CHECK(parse_error_line("# c\nseed = 1\nseed = 2\n") == 3);
  CHECK(parse_error_line("n_nodes 30\n") == 1);
  CHECK(parse_error_line("\n\nn_nodes = thirty\n") == 3);
  CHECK(parse_error_line("duration =\n") == 1);
}

TEST_CASE("to_text round-trips every field") {
  Scenario s;
  s.scenario_id = "round_trip";
  s.protocol = ProtocolKind::GpsrGreedyOnly;
  s.n_nodes = 77;
  s.pause = 12.5;
  s.rate = 3.0;
  s.aodv.hello = true;
  s.escape_cache = false;
  s.sweep.axis = "pause";
  s.sweep.values = {"0", "10"};
  s.sweep.replications = 4;
  s.sweep.protocols = {ProtocolKind::Crp};
  const std::string text = to_text(s);
  CHECK(to_text(parse_scenario(text)) == text);
  CHECK(text != to_text(Scenario{}));
  for (const auto& [key, help] : scenario_keys()) {
    CHECK_FALSE(help.empty());
    if (key != "interval") CHECK(text.find(key + " = ") != std::string::npos);
  }
}

TEST_CASE("a zero-length run sends nothing") {
  Scenario s = short_scenario(ProtocolKind::Aodv, 0.0);
  const auto r = run_one(s);
  CHECK(r.row.sent == 0);
  CHECK(r.row.transmissions_total == 0);
  CHECK_FALSE(r.row.mean_delay_ms);
}

TEST_CASE("runs are reproducible and share the world across protocols") {
  const auto a = run_one(short_scenario(ProtocolKind::Aodv));
  const auto again = run_one(short_scenario(ProtocolKind::Aodv));
  CHECK(csv_row(a.row) == csv_row(again.row));
  CHECK(a.dispatch_hash == again.dispatch_hash);

  const auto g = run_one(short_scenario(ProtocolKind::Gpsr));
  const auto c = run_one(short_scenario(ProtocolKind::Crp));
  CHECK(a.trace_hash == g.trace_hash);
  CHECK(a.trace_hash == c.trace_hash);
  CHECK(a.streams_hash == g.streams_hash);
  CHECK(a.streams_hash == c.streams_hash);
  CHECK(a.row.sent == c.row.sent);

  Scenario other = short_scenario(ProtocolKind::Aodv);
  other.seed = 2;
  CHECK(run_one(other).trace_hash != a.trace_hash);
}

TEST_CASE("accounting holds on mobile runs of every protocol") {
  for (ProtocolKind p : {ProtocolKind::Aodv, ProtocolKind::Gpsr, ProtocolKind::Crp, ProtocolKind::GpsrGreedyOnly}) {
    for (double pause : {0.0, 40.0}) {
      Scenario s = short_scenario(p, 80.0);
      s.pause = pause;
      CAPTURE(to_string(p));
      CAPTURE(pause);
      const auto run = fixture::run_checked(s);
      CHECK(fixture::identity_violation(run.result).empty());
      CHECK(run.replayed == run.result.row);
      CHECK(run.log_tx == run.result.tx_by_kind);
    }
  }
  Scenario hello = short_scenario(ProtocolKind::Aodv, 80.0);
  hello.aodv.hello = true;
  hello.pause = 0;
  const auto run = fixture::run_checked(hello);
  CHECK(fixture::identity_violation(run.result).empty());
  CHECK(run.replayed == run.result.row);
}

TEST_CASE("a one-cell sweep is a single run") {
  SweepPlan plan;
  plan.base = short_scenario(ProtocolKind::Gpsr);
  plan.axis = SweepAxis::Pause;
  plan.values = {"40"};
  plan.protocols = {ProtocolKind::Gpsr};
  const auto result = run_sweep(plan, 1);
  REQUIRE(result.completed_rows().size() == 1);
  CHECK(csv_row(result.completed_rows()[0]) == csv_row(run_one(plan.base).row));
}

TEST_CASE("sweep expansion order, labels and seeds") {
  const auto plan = small_plan();
  const auto cells = expand(plan);
  REQUIRE(cells.size() == 2 * 3 * 2);
  std::size_t i = 0;
  for (std::size_t v = 0; v < 2; ++v) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::uint32_t r = 0; r < 2; ++r, ++i) {
        CHECK(cells[i].value_index == v);
        CHECK(cells[i].protocol_index == p);
        CHECK(cells[i].replication == r);
        CHECK(cells[i].scenario.seed == 7 + r);
        CHECK(cells[i].scenario.pause == (v == 0 ? 0.0 : 40.0));
        CHECK(cells[i].scenario.protocol == plan.protocols[p]);
      }
    }
  }
}

TEST_CASE("other sweep axes") {
  SweepPlan plan = small_plan();
  plan.axis = SweepAxis::NNodes;
  plan.values = {"30", "50", "100"};
  plan.replications = 1;
  const auto cells = expand(plan);
  REQUIRE(cells.size() == 9);
  CHECK(cells[0].scenario.n_nodes == 30);
  CHECK(cells[3].scenario.n_nodes == 50);
  CHECK(cells[8].scenario.n_nodes == 100);

  plan.axis = SweepAxis::Rate;
  plan.values = {"1", "25"};
  CHECK(expand(plan)[3].scenario.rate == 25.0);

  plan.axis = SweepAxis::Protocol;
  plan.values = {"aodv", "gpsr_greedy_only"};
  const auto by_protocol = expand(plan);
  CHECK(by_protocol.size() == 2);
  CHECK(by_protocol[1].scenario.protocol == ProtocolKind::GpsrGreedyOnly);

  plan.axis = SweepAxis::Pause;
  plan.values = {"-1"};
  CHECK_THROWS_AS(expand(plan), ValidationError);
  plan.values = {"abc"};
  CHECK_THROWS_AS(expand(plan), ValidationError);

  CHECK(parse_axis("n_nodes") == SweepAxis::NNodes);
  CHECK_FALSE(parse_axis("speed"));
}

TEST_CASE("sweep results do not depend on the worker count") {
  const auto plan = small_plan();
  const auto one = run_sweep(plan, 1);
  const auto four = run_sweep(plan, 4);
  CHECK(one.failures.empty());
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, one.completed_rows());
  write_csv(b, four.completed_rows());
  CHECK(a.str() == b.str());
  CHECK(one.completed_rows().size() == 12);
}

TEST_CASE("MANET_LAB_JOBS caps the worker count") {
  ::setenv("MANET_LAB_JOBS", "2", 1);
  CHECK(resolve_jobs(8) == 2);
  CHECK(resolve_jobs(1) == 1);
  CHECK(resolve_jobs(0) <= 2);
  ::setenv("MANET_LAB_JOBS", "junk", 1);
  CHECK(resolve_jobs(3) == 3);
  ::unsetenv("MANET_LAB_JOBS");
  CHECK(resolve_jobs(5) == 5);
  CHECK(resolve_jobs(0) >= 1);
}

TEST_CASE("summary statistics") {
  const auto s = summarize({1.0, 2.0, 3.0});
  CHECK(s.n == 3);
  CHECK(s.mean == doctest::Approx(2.0));
  CHECK(s.sd == doctest::Approx(1.0));
  const auto single = summarize({5.0});
  CHECK(single.mean == 5.0);
  CHECK(single.sd == 0.0);
  CHECK(summarize({}).n == 0);
}

TEST_CASE("csv schema") {
  const std::vector<std::string> expected{"protocol",
                                          "scenario_id",
                                          "seed",
                                          "n_nodes",
                                          "pause_s",
                                          "rate_pps",
                                          "sent",
                                          "delivered",
                                          "delivery_ratio",
                                          "mean_delay_ms",
                                          "transmissions_total",
                                          "drop_ttl",
                                          "drop_link",
                                          "drop_timeout",
                                          "drop_buffer",
                                          "drop_perimeter"};
  CHECK(csv_columns().size() == 16);
  CHECK(csv_columns() == expected);

  std::ostringstream empty;
  write_csv(empty, {});
  CHECK(empty.str() == csv_header() + "\n");
}

TEST_CASE("csv write and read round-trip") {
  const auto rows = run_sweep(small_plan(), 2).completed_rows();
  MetricsRow silent = rows.front();
  silent.delivered = 0;
  silent.mean_delay_ms.reset();
  std::vector<MetricsRow> all = rows;
  all.push_back(silent);

  std::stringstream io;
  write_csv(io, all);
  const auto back = read_csv(io);
  REQUIRE(back.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(csv_row(back[i]) == csv_row(all[i]));

  std::string text = "# comment\n" + io.str();
  const auto pos = text.find("delivery_ratio");
  text.replace(pos, std::string("delivery_ratio").size(), "throughput");
  std::istringstream aliased(text);
  CHECK(read_csv(aliased).size() == all.size());

  std::istringstream bad(csv_header() + "\naodv,x,1\n");
  CHECK_THROWS_AS(read_csv(bad), ParseError);
}

TEST_CASE("the table rebuilt from csv matches the sweep's own") {
  const auto plan = small_plan();
  const auto result = run_sweep(plan, 2);
  const auto table = aggregate(result, plan);
  CHECK(table.values.size() == 2);
  CHECK(table.protocols.size() == 3);
  CHECK(table.grid[1][2].delivery_ratio.n == 2);

  std::stringstream io;
  write_csv(io, result.completed_rows());
  const auto rebuilt = aggregate_rows(read_csv(io), plan.axis);
  const std::string rendered = render_table(table);
  CHECK(rendered == render_table(rebuilt));
  CHECK(rendered.find("±") != std::string::npos);
  CHECK(rendered.find("crp") != std::string::npos);
}

TEST_CASE("write_file reports unwritable paths") {
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x/y.csv", "a"), IoError);
}
