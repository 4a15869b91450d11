#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace ehs::cli;

int main(int argc, char** argv) {
  CLI::App app{"Minimum-completion-time scheduling for energy-harvesting transmitters"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "Compute a schedule for a scenario file");
  solve->add_option("scenario", solve_opt.scenario, "Scenario JSON")->required();
  solve->add_option("--solver", solve_opt.solver, "optimal or ebs")
      ->check(CLI::IsMember({"optimal", "ebs"}))
      ->capture_default_str();
  solve->add_flag("--json", solve_opt.json, "Print the outcome as JSON");

  ValidateOptions val_opt;
  auto* val = app.add_subcommand("validate", "Check a schedule against a scenario");
  val->add_option("scenario", val_opt.scenario, "Scenario JSON")->required();
  val->add_option("schedule", val_opt.schedule, "Schedule JSON as written by solve --json")->required();
  val->add_option("--tol", val_opt.tol, "Relative tolerance")->capture_default_str();

  OracleOptions or_opt;
  auto* orc = app.add_subcommand("oracle", "Brute-force minimum completion time by dynamic programming");
  orc->add_option("scenario", or_opt.scenario, "Scenario JSON")->required();
  orc->add_option("--dt", or_opt.dt, "Slot width in seconds; event times must be multiples")->capture_default_str();
  orc->add_option("--equant", or_opt.energy_quantum, "Energy quantum in Joules (0: total energy / 1e7)");
  orc->add_option("--dquant", or_opt.data_quantum, "Data quantum in bits (0: total data / 16000)");
  orc->add_option("--rgrid", or_opt.rate_step, "Rate grid step in bits/s; sets the data quantum to rgrid * dt");
  orc->add_option("--max-cells", or_opt.max_cells, "Refuse grids larger than this")->capture_default_str();

  SimulateOptions sim_opt;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo comparison of the optimal scheduler and EBS");
  sim->add_option("--config", sim_opt.config, "Experiment JSON");
  auto* trials_opt = sim->add_option("--trials", trials, "Trials per energy level");
  auto* seed_opt = sim->add_option("--seed", seed, "Experiment seed");
  sim->add_option("--out", sim_opt.out_path, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (solve->parsed()) return cmd_solve(solve_opt, std::cout, std::cerr);
  if (val->parsed()) return cmd_validate(val_opt, std::cout, std::cerr);
  if (orc->parsed()) return cmd_oracle(or_opt, std::cout, std::cerr);
  if (trials_opt->count()) sim_opt.trials = trials;
  if (seed_opt->count()) sim_opt.seed = seed;
  return cmd_simulate(sim_opt, std::cout, std::cerr);
}
