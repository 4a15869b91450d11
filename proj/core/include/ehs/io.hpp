#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "ehs/scenario.hpp"
#include "ehs/scheduler.hpp"
#include "ehs/sim.hpp"

namespace ehs {

/// Malformed input file. `where` is "line:col" for syntax errors or a JSON path
/// such as "energy[1][0]" for schema errors.
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Scenario file:
///   {"model": {"kind": "shannon", "params": {"bandwidth": 1, "noise": 1}},
///    "c_max": 2, "energy": [[0, 1], [0.5, 2]], "data": [[0, 1]],
///    "qos": {"kind": "deadline", "params": {"theta": [0.8]}}}
/// model kinds: shannon {bandwidth, noise}, monomial {exponent, scale}.
/// qos kinds: none, explicit {requirements: [[t, bits]...]},
/// deadline {theta: number or [per packet]}, buffer {beta}.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Schedule file: {"status": "scheduled", "T": ..., "energy_spent": ...,
/// "epochs": [{"tau", "rate", "length", "overflow_at_end"}...],
/// "overflows": [[t, J]...]}. Infeasible outcomes are written as
/// {"status": "infeasible", "witness": {...}} with null for an infinite time.
nlohmann::json outcome_to_json(const SolveOutcome& outcome);
SolveOutcome outcome_from_json(const nlohmann::json& j);

/// Every field is optional; missing ones keep the defaults.
ExperimentConfig experiment_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file, reporting syntax errors by line and column.
nlohmann::json read_json(const std::filesystem::path& path);

Scenario load_scenario(const std::filesystem::path& path);
SolveOutcome load_outcome(const std::filesystem::path& path);
ExperimentConfig load_experiment(const std::filesystem::path& path);

const char* to_string(InfeasibleKind kind);

}  // namespace ehs
