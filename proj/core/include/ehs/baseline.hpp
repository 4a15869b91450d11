#pragma once

#include "ehs/scenario.hpp"
#include "ehs/scheduler.hpp"

namespace ehs {

/// Empty-buffers heuristic. At every arrival it picks the constant rate that
/// empties the data buffer exactly at the next arrival (energy or data); once
/// nothing else arrives it spends the battery evenly on what is left. It gives
/// up when that rate needs more energy than the battery holds or when a QoS
/// requirement is missed.
SolveOutcome ebs_solve(const PreparedScenario& scenario);
SolveOutcome ebs_solve(const Scenario& scenario);

}  // namespace ehs
