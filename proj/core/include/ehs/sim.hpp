#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ehs/power_rate.hpp"
#include "ehs/scenario.hpp"

namespace ehs {

/// Monte-Carlo comparison of the optimal scheduler and the empty-buffers
/// heuristic. Defaults are a reasonable desk-scale setup, not calibrated to any
/// published figure.
struct ExperimentConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<double> energy_levels{1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};  // total Joules per trial
  std::size_t data_packets = 3;
  std::size_t energy_packets = 3;
  double horizon = 1.0;  // arrivals are uniform on [0, horizon]
  double c_max = 2.0;
  PowerRateModel model;

  /// QoS applied to every trial. Deadline uses one shared theta; Buffer uses
  /// `qos_value` bits; Explicit draws `qos_events` random requirements.
  QosSpec::Kind qos_kind = QosSpec::Kind::Deadline;
  double qos_value = 0.5;
  std::size_t qos_events = 2;

  void check() const;
};

/// Deterministic stream of uniforms keyed by (seed, trial). Each draw hashes
/// its own counter, so trials never share state and can run in any order.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial);
  /// Uniform on (0, 1].
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// One random scenario. The arrival pattern depends on (seed, trial) only;
/// `energy_level` rescales the energy packets so they sum to it.
Scenario generate_scenario(const ExperimentConfig& config, std::uint64_t trial, double energy_level);

struct TrialRecord {
  double energy_level = 0.0;
  std::uint64_t trial = 0;
  bool opt_feasible = false;
  bool ebs_feasible = false;
  bool opt_error = false;
  bool ebs_error = false;
  double opt_t = 0.0;  // normalized by the horizon
  double ebs_t = 0.0;
};

struct ResultRow {
  double energy_level = 0.0;
  double opt_mean_t = 0.0;  // over trials where the optimal scheduler succeeded
  double opt_feasible_pct = 0.0;
  double ebs_mean_t = 0.0;  // over trials where both succeeded
  double ebs_feasible_pct = 0.0;
  std::size_t opt_errors = 0;  // trials that raised instead of returning
  std::size_t ebs_errors = 0;
};

/// Runs every trial at every energy level. When `records` is given it receives
/// one entry per (level, trial).
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      std::vector<TrialRecord>* records = nullptr);

/// CSV with header energy_level,opt_mean_T,opt_feasible_pct,ebs_mean_T,ebs_feasible_pct.
std::string format_results(const std::vector<ResultRow>& rows);
void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
std::vector<ResultRow> read_results(const std::filesystem::path& path);

}  // namespace ehs
