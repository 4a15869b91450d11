#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "ehs/sim.hpp"

using namespace ehs;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.trials = 50;
  c.seed = 3;
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ehs_sim_" + name);
}

}  // namespace

TEST(Sim, TrialStreamIsDeterministicAndInRange) {
  TrialStream a(5, 9);
  TrialStream b(5, 9);
  TrialStream c(5, 10);
  int same_as_other_trial = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GT(x, 0.0);
    EXPECT_LE(x, 1.0);
    same_as_other_trial += x == c.uniform();
  }
  EXPECT_EQ(same_as_other_trial, 0);
}

TEST(Sim, TrialStreamLooksUniform) {
  TrialStream s(1, 0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += s.uniform();
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(Sim, GeneratedEnergySumsToTheLevel) {
  const ExperimentConfig cfg = small_config();
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Scenario s = generate_scenario(cfg, t, 3.5);
    ASSERT_EQ(s.energy.size(), cfg.energy_packets);
    ASSERT_EQ(s.data.size(), cfg.data_packets);
    EXPECT_EQ(s.energy.front().time, 0.0);
    const double total =
        std::accumulate(s.energy.begin(), s.energy.end(), 0.0, [](double a, const Jump& j) { return a + j.amount; });
    EXPECT_NEAR(total, 3.5, 1e-12);
    for (const auto& d : s.data) {
      EXPECT_GE(d.time, 0.0);
      EXPECT_LE(d.time, cfg.horizon);
    }
  }
}

TEST(Sim, ArrivalPatternDoesNotDependOnTheLevel) {
  const ExperimentConfig cfg = small_config();
  const Scenario a = generate_scenario(cfg, 4, 1.0);
  const Scenario b = generate_scenario(cfg, 4, 2.0);
  ASSERT_EQ(a.energy.size(), b.energy.size());
  for (std::size_t j = 0; j < a.energy.size(); ++j) {
    EXPECT_EQ(a.energy[j].time, b.energy[j].time);
    EXPECT_NEAR(2.0 * a.energy[j].amount, b.energy[j].amount, 1e-12);
  }
  EXPECT_EQ(a.data, b.data);
}

TEST(Sim, OneRowPerLevelAndReproducible) {
  const ExperimentConfig cfg = small_config();
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), cfg.energy_levels.size());
  for (const auto& r : rows) {
    EXPECT_EQ(r.opt_errors, 0u);
    EXPECT_EQ(r.ebs_errors, 0u);
    EXPECT_GE(r.opt_feasible_pct, r.ebs_feasible_pct);
  }
  EXPECT_EQ(format_results(rows), format_results(run_experiment(cfg)));
}

TEST(Sim, RejectsEmptyExperiments) {
  ExperimentConfig cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.energy_levels.clear();
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(Sim, CsvRoundTrip) {
  const auto rows = run_experiment(small_config());
  const auto path = temp_file("roundtrip.csv");
  write_results(rows, path);
  const auto back = read_results(path);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].energy_level, rows[i].energy_level);
    EXPECT_NEAR(back[i].opt_feasible_pct, rows[i].opt_feasible_pct, 1e-9);
    if (!std::isnan(rows[i].opt_mean_t)) EXPECT_NEAR(back[i].opt_mean_t, rows[i].opt_mean_t, 1e-11);
  }
  std::filesystem::remove(path);
}

TEST(Sim, WriteFailuresAreReported) {
  EXPECT_THROW(write_results({}, temp_file("empty.csv")), std::invalid_argument);
  const auto rows = run_experiment(small_config());
  EXPECT_THROW(write_results(rows, "/nonexistent-dir/x.csv"), std::runtime_error);

  const auto path = temp_file("bad.csv");
  std::ofstream(path) << "not,a,header\n";
  EXPECT_THROW(read_results(path), std::runtime_error);
  std::filesystem::remove(path);
}
