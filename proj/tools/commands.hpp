#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "ehs/sim.hpp"

namespace ehs::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // bad input, usage, I/O
inline constexpr int kExitInfeasible = 2;  // solve/oracle found no schedule
inline constexpr int kExitInvalid = 3;     // validate: a constraint check failed

struct SolveOptions {
  std::string scenario;
  std::string solver = "optimal";  // optimal | ebs
  bool json = false;
};
int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err);

struct ValidateOptions {
  std::string scenario;
  std::string schedule;
  double tol = 1e-6;
};
int cmd_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err);

struct OracleOptions {
  std::string scenario;
  double dt = 0.01;
  double energy_quantum = 0.0;  // 0: default
  double data_quantum = 0.0;    // 0: default
  double rate_step = 0.0;       // rate grid spacing; sets data_quantum = rate_step * dt
  std::size_t max_cells = 400'000'000;
};
int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  std::optional<std::string> config;  // JSON file; flags below override it
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace ehs::cli
