#include <benchmark/benchmark.h>

#include "ehs/baseline.hpp"
#include "ehs/oracle.hpp"
#include "ehs/scheduler.hpp"
#include "ehs/sim.hpp"

namespace {

ehs::Scenario random_scenario(std::size_t packets, std::uint64_t trial) {
  ehs::ExperimentConfig cfg;
  cfg.data_packets = packets;
  cfg.energy_packets = packets;
  cfg.qos_kind = ehs::QosSpec::Kind::Deadline;
  cfg.qos_value = 0.5;
  return ehs::generate_scenario(cfg, trial, 4.0 * static_cast<double>(packets) / 3.0);
}

void BM_Solve(benchmark::State& state) {
  const auto packets = static_cast<std::size_t>(state.range(0));
  std::vector<ehs::PreparedScenario> pool;
  for (std::uint64_t t = 0; t < 64; ++t) pool.emplace_back(random_scenario(packets, t));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ehs::solve(pool[i++ % pool.size()]));
}
BENCHMARK(BM_Solve)->RangeMultiplier(2)->Range(2, 64);

void BM_Ebs(benchmark::State& state) {
  const auto packets = static_cast<std::size_t>(state.range(0));
  std::vector<ehs::PreparedScenario> pool;
  for (std::uint64_t t = 0; t < 64; ++t) pool.emplace_back(random_scenario(packets, t));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ehs::ebs_solve(pool[i++ % pool.size()]));
}
BENCHMARK(BM_Ebs)->RangeMultiplier(2)->Range(2, 64);

void BM_Oracle(benchmark::State& state) {
  ehs::Scenario s;
  s.c_max = 2.0;
  s.energy = {{0.0, 1.0}, {0.5, 1.5}};
  s.data = {{0.0, 1.0}, {0.3, 1.0}};
  ehs::OracleConfig cfg;
  cfg.data_quantum = 2.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ehs::dp_min_time(s, cfg));
}
BENCHMARK(BM_Oracle)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Experiment(benchmark::State& state) {
  ehs::ExperimentConfig cfg;
  cfg.trials = 100;
  for (auto _ : state) benchmark::DoNotOptimize(ehs::run_experiment(cfg));
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
