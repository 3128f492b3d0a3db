// Command-line front end: run a scenario, sweep an initial position, or
// print the t = 0 analysis of a scenario.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tdg/errors.hpp"
#include "tdg/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;

int cmd_run(const std::string& scenario_path, const std::optional<std::string>& mode,
            std::optional<double> dt, std::optional<double> eps, const std::string& out_dir) {
  tdg::Scenario s = tdg::load_scenario(scenario_path);
  if (mode) s.mode = tdg::parse_game_mode(*mode);
  if (eps) {
    s.sim.capture_eps = *eps;
    if (!dt) s.sim.dt = std::min(s.sim.dt, *eps / 2.0);
  }
  if (dt) s.sim.dt = *dt;

  const auto r = tdg::run_scenario(s);
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream trace(std::filesystem::path(out_dir) / "trace.csv");
    tdg::write_trace_csv(r, trace);
  }
  const auto summary = tdg::summary_json(r);
  {
    std::ofstream out(std::filesystem::path(out_dir) / "summary.json");
    out << summary.dump(2) << '\n';
  }
  std::cout << "winner " << summary["winner"].get<std::string>() << ", payoff "
            << r.trace.payoff;
  if (r.trace.phase1_end) std::cout << ", t_f1 " << *r.trace.phase1_end;
  std::cout << '\n';

  if (r.status == tdg::RunStatus::kTimeout) {
    std::cerr << "timeout at t_max = " << s.sim.t_max << '\n';
    return kExitTimeout;
  }
  if (s.mode != tdg::GameMode::kNominal && !r.deviation_applied) {
    std::cerr << "infeasible: " << r.fallback_reason << " (ran nominal strategies)\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path,
              std::optional<std::size_t> threads) {
  auto spec = tdg::load_sweep_spec(spec_path);
  if (threads) spec.threads = *threads;
  const auto rows = tdg::run_sweep(spec);
  std::ofstream out(out_path);
  if (!out) throw tdg::Error("cannot write " + out_path);
  tdg::write_sweep_csv(rows, out);
  std::size_t errors = 0;
  for (const auto& r : rows) errors += r.status == "error" ? 1 : 0;
  std::cout << rows.size() << " rows written to " << out_path;
  if (errors) std::cout << " (" << errors << " with errors)";
  std::cout << '\n';
  return kExitOk;
}

int cmd_check(const std::string& scenario_path, int grid) {
  const auto s = tdg::load_scenario(scenario_path);
  const auto as = tdg::assess(s.initial_state(), tdg::SpeedRatio(s.nu), grid);
  std::printf("phi (rows: attackers, cols: defenders)\n");
  for (std::size_t i = 0; i < as.phi.size(); ++i) {
    std::printf("  A%zu:", i + 1);
    for (std::size_t j = 0; j < as.phi.size(); ++j) std::printf(" %.6f", as.phi(i, j));
    std::printf("\n");
  }
  std::printf("psi* = [");
  for (std::size_t i = 0; i < as.assignment.psi.size(); ++i)
    std::printf("%s%zu", i ? ", " : "", as.assignment.psi[i] + 1);
  std::printf("], value %.6f, critical pair (A%zu, D%zu)\n", as.assignment.value,
              as.assignment.critical_attacker + 1, as.assignment.critical_defender + 1);
  std::printf("defender-win nominal condition: %s\n", as.nominal_condition ? "yes" : "no");
  std::printf("one-deviation feasible: %s\n", as.theorem1_feasible ? "yes" : "no");
  for (const auto& p : as.one_dev_candidates) std::printf("  x_I candidate (%.4f, %.4f)\n", p.x, p.y);
  if (as.theorem2) {
    std::printf("two-deviation region condition (grid %d, %d samples): %s\n", as.theorem2->grid_n,
                as.theorem2->samples_tested, as.theorem2->holds ? "holds" : "fails");
  } else {
    std::printf("two-deviation region condition: n/a (%s)\n", as.regions_error.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2v2 target-defense game simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<std::string> mode;
  std::optional<double> dt;
  std::optional<double> eps;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "simulate one scenario");
  run->add_option("--scenario", scenario_path, "scenario JSON")->required();
  run->add_option("--mode", mode, "nominal | one-dev | two-dev");
  run->add_option("--dt", dt, "integration step");
  run->add_option("--eps", eps, "capture radius");
  run->add_option("--out-dir", out_dir, "directory for trace.csv and summary.json");

  std::string spec_path;
  std::string sweep_out = "sweep.csv";
  std::optional<std::size_t> threads;
  auto* sweep = app.add_subcommand("sweep", "sweep one agent's initial position over a grid");
  sweep->add_option("--spec", spec_path, "sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "output CSV");
  sweep->add_option("--threads", threads, "worker threads (default: all cores)");

  std::string check_path;
  int grid = 64;
  auto* check = app.add_subcommand("check", "print costs, assignment and deviation feasibility");
  check->add_option("--scenario", check_path, "scenario JSON")->required();
  check->add_option("--grid", grid, "grid resolution for the two-deviation check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(scenario_path, mode, dt, eps, out_dir);
    if (*sweep) return cmd_sweep(spec_path, sweep_out, threads);
    if (*check) return cmd_check(check_path, grid);
  } catch (const tdg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
