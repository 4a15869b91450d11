#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "ehs/scenario.hpp"

namespace ehs {

/// Discretization of the brute-force search. Zero quanta pick defaults from
/// the scenario (total energy / 1e7 and total data / 16000).
struct OracleConfig {
  double dt = 0.01;             // slot width, seconds; every event time must be a multiple
  double energy_quantum = 0.0;  // Joules
  double data_quantum = 0.0;    // bits; rounded down so that total data is a whole number of quanta
  std::size_t max_cells = 400'000'000;  // refuse when slots x data levels exceeds this
};

/// The requested discretization needs more than `max_cells` states.
class OracleSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  bool feasible = false;
  double completion_time = 0.0;  // valid when feasible
  std::size_t slots = 0;
  std::size_t data_levels = 0;
};

/// Minimum completion time by dynamic programming over (slot, data sent) with
/// the largest reachable battery kept per state. Each slot sends a whole number
/// of data quanta at constant rate; energy use is rounded up and harvested
/// energy, capacity and data arrivals are rounded down, so the result never
/// beats the true optimum. From an event boundary a state may also finish
/// inside a slot by spending its battery evenly on the data left, provided the
/// straight line respects the data arrivals and QoS on the way.
OracleResult dp_min_time(const Scenario& scenario, const OracleConfig& config = {});

}  // namespace ehs
