#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "ehs/scenario.hpp"
#include "ehs/sim.hpp"
#include "ehs/staircase.hpp"

namespace ehs::testkit {

/// Small scenario with event times on a 0.01 s grid: up to 3 energy arrivals,
/// up to 3 data packets and up to 2 explicit QoS requirements. Every tenth
/// scenario uses a quadratic power-rate model instead of the default link.
inline Scenario grid_scenario(std::uint64_t seed, std::uint64_t index) {
  TrialStream rng(seed, index);
  const auto pick = [&](int n) { return static_cast<int>(std::ceil(rng.uniform() * n)) - 1; };
  const auto grid = [&] { return std::round(rng.uniform() * 100.0) / 100.0; };

  Scenario s;
  if (index % 10 == 9) s.model = MonomialModel{2.0, 1.0};
  const int ne = 1 + pick(3);
  const int nd = 1 + pick(3);
  const int nq = pick(3);
  s.c_max = 0.5 + 2.0 * rng.uniform();
  s.energy.push_back({0.0, 0.2 + 2.0 * rng.uniform()});
  for (int j = 1; j < ne; ++j) s.energy.push_back({grid(), 0.2 + 2.0 * rng.uniform()});
  for (int j = 0; j < nd; ++j) s.data.push_back({j == 0 ? 0.0 : grid(), 0.2 + 1.5 * rng.uniform()});

  const auto by_time = [](const Jump& a, const Jump& b) { return a.time < b.time; };
  std::stable_sort(s.energy.begin(), s.energy.end(), by_time);
  std::stable_sort(s.data.begin(), s.data.end(), by_time);

  const Staircase arrivals(s.data);
  std::vector<Jump> reqs;
  double promised = 0.0;
  for (int k = 0; k < nq; ++k) {
    const double t = grid();
    if (t <= 0.0) continue;
    const double need = (arrivals.eval(t, Side::Left) - promised) * rng.uniform();
    if (need > 1e-3) {
      reqs.push_back({t, need});
      promised += need;
    }
  }
  std::stable_sort(reqs.begin(), reqs.end(), by_time);
  if (!reqs.empty()) s.qos = QosSpec::explicit_curve(std::move(reqs));
  return s;
}

}  // namespace ehs::testkit
