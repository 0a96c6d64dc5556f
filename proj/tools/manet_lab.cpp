// manet-lab: run, sweep and validate MANET routing scenarios.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manet/errors.hpp"
#include "manet/harness/report.hpp"
#include "manet/harness/scenario.hpp"
#include "manet/harness/simulation.hpp"
#include "manet/harness/sweep.hpp"
#include "manet/harness/text.hpp"

namespace {

using namespace manet;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

void echo_scenario(std::ostream& os, const Scenario& s) {
  std::istringstream lines(to_text(s));
  for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
}

void apply_overrides(Scenario& s, const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError(kv, "--set expects key=value");
    apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
  }
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event MANET routing simulator (AODV, GPSR, CRP)"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> sets;

  auto* run = app.add_subcommand("run", "Run one scenario and print its CSV row");
  std::uint64_t seed = 0;
  std::string protocol;
  std::string out_dir;
  std::string trace_file;
  run->add_option("file", file, "scenario file")->required();
  auto* seed_opt = run->add_option("--seed", seed, "override the seed");
  run->add_option("--protocol", protocol, "override the protocol");
  run->add_option("--set", sets, "override any scenario key (key=value), repeatable");
  run->add_option("--out", out_dir, "also write results.csv into this directory");
  run->add_option("--dump-trace", trace_file, "write node positions (node,t,x,y) at 1 s steps");

  auto* sweep = app.add_subcommand("sweep", "Run a grid of scenarios and print rows plus an aggregate table");
  std::string axis;
  std::string values;
  std::uint32_t reps = 0;
  std::string protocols;
  unsigned jobs = 0;
  bool quiet = false;
  sweep->add_option("file", file, "scenario file")->required();
  sweep->add_option("--axis", axis, "rate | pause | n_nodes | protocol");
  sweep->add_option("--values", values, "comma-separated axis values");
  sweep->add_option("--reps", reps, "replications per cell (seed = seed + index)");
  sweep->add_option("--protocols", protocols, "comma-separated protocols");
  sweep->add_option("--jobs", jobs, "parallel runs (0 = all cores; capped by MANET_LAB_JOBS)");
  sweep->add_option("--set", sets, "override any scenario key (key=value), repeatable");
  sweep->add_option("--out", out_dir, "write rows.csv and table.txt into this directory");
  sweep->add_flag("--quiet", quiet, "no progress on stderr");

  auto* check = app.add_subcommand("validate", "Parse a scenario and print it in canonical form");
  check->add_option("file", file, "scenario file")->required();
  check->add_option("--set", sets, "override any scenario key (key=value), repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  Scenario scenario;
  try {
    scenario = load_scenario_file(file);
    apply_overrides(scenario, sets);
    if (run->parsed()) {
      if (*seed_opt) scenario.seed = seed;
      if (!protocol.empty()) apply_setting(scenario, "protocol", protocol);
    }
    validate(scenario);
  } catch (const ParseError& e) {
    std::cerr << file << ':' << e.line() << ": " << e.what() << '\n';
    return kInvalid;
  } catch (const ValidationError& e) {
    std::cerr << file << ": " << e.what() << '\n';
    return kInvalid;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  }

  if (check->parsed()) {
    std::cout << to_text(scenario);
    return kOk;
  }

  SweepPlan plan;
  if (sweep->parsed()) {
    try {
      plan.base = scenario;
      const std::string axis_name = axis.empty() ? scenario.sweep.axis : axis;
      if (axis_name.empty()) throw ValidationError("axis", "no --axis and no sweep_axis in the scenario");
      const auto a = parse_axis(axis_name);
      if (!a) throw ValidationError("axis", "unknown axis '" + axis_name + "'");
      plan.axis = *a;
      plan.values = values.empty() ? scenario.sweep.values : text::split(values, ',');
      plan.replications = reps != 0 ? reps : scenario.sweep.replications;
      plan.protocols = scenario.sweep.protocols;
      if (!protocols.empty()) {
        plan.protocols.clear();
        for (const auto& name : text::split(protocols, ',')) {
          auto p = parse_protocol(name);
          if (!p) throw ValidationError("protocols", "unsupported protocol '" + name + "'");
          plan.protocols.push_back(*p);
        }
      }
      expand(plan);
    } catch (const ValidationError& e) {
      std::cerr << e.what() << '\n';
      return kInvalid;
    }
  }

  try {
    if (run->parsed()) {
      Simulation sim(scenario);
      if (!trace_file.empty()) {
        std::ostringstream os;
        dump_traces(os, sim.traces());
        write_file(trace_file, os.str());
      }
      const RunResult r = sim.run();
      echo_scenario(std::cout, scenario);
      write_csv(std::cout, {r.row});
      if (!out_dir.empty()) {
        std::ostringstream os;
        write_csv(os, {r.row});
        write_file(out_path(out_dir, "results.csv"), os.str());
      }
      return kOk;
    }

    const unsigned workers = resolve_jobs(jobs);
    const SweepResult result = run_sweep(plan, workers, [&](std::size_t done, std::size_t total) {
      if (!quiet) std::cerr << "\r" << done << "/" << total << (done == total ? "\n" : "") << std::flush;
    });
    for (const auto& f : result.failures) {
      std::cerr << "cell " << f.cell << " failed: " << f.what << '\n';
    }
    const auto rows = result.completed_rows();
    const std::string table = render_table(aggregate(result, plan));

    std::ostringstream csv;
    write_csv(csv, rows);
    if (out_dir.empty()) {
      echo_scenario(std::cout, scenario);
      std::cout << csv.str() << '\n' << table;
    } else {
      write_file(out_path(out_dir, "rows.csv"), csv.str());
      write_file(out_path(out_dir, "table.txt"), table);
      std::cout << table;
    }
    return result.failures.empty() ? kOk : kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}
