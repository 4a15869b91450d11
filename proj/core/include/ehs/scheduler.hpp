#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ehs/energy.hpp"
#include "ehs/mapping.hpp"
#include "ehs/scenario.hpp"
#include "ehs/staircase.hpp"

namespace ehs {

/// One constant-rate segment of a schedule, in absolute time.
struct Epoch {
  double tau = 0.0;              // start time
  double rate = 0.0;             // bits/s
  double length = 0.0;           // seconds
  double overflow_at_end = 0.0;  // energy lost at an arrival at tau + length
};

struct Schedule {
  std::vector<Epoch> epochs;
  double completion_time = 0.0;
  std::vector<Jump> overflows;  // (e_j, O_j) over the whole schedule
  double energy_spent = 0.0;
};

/// Why a scenario cannot be served.
enum class InfeasibleKind {
  Energy,           // QoS requirement above what the harvested energy can carry
  Data,             // QoS requirement above the data that has arrived
  EnergyExhausted,  // all energy arrived and it cannot carry the remaining data
};

/// Certificate of infeasibility. At `time` (absolute; +inf for EnergyExhausted)
/// at least `required` bits must have left, but no schedule starting at `origin`
/// with `energy_available` Joules can send more than `achievable`.
struct Infeasible {
  InfeasibleKind kind = InfeasibleKind::Energy;
  double time = 0.0;
  double required = 0.0;
  double achievable = 0.0;
  double energy_available = 0.0;
  double origin = 0.0;
};

using SolveOutcome = std::variant<Schedule, Infeasible>;

/// Solver state at the start of an epoch. Curves are kept in absolute time; the
/// per-iteration views are built by `iteration_bounds`.
struct IterationState {
  double tau = 0.0;
  double sent = 0.0;     // bits transmitted before tau
  double spent = 0.0;    // Joules spent before tau
  double battery = 0.0;  // charge at tau, after any arrival at tau
  EnergyTimeline timeline;
};

IterationState initial_state(const PreparedScenario& scenario);

/// Event times strictly after tau, relative to tau.
std::vector<EventTime> remaining_events(const PreparedScenario& scenario, double tau);

/// Corridor of the current iteration in coordinates relative to tau.
BoundPair iteration_bounds(const PreparedScenario& scenario, const IterationState& state);

/// Checks every remaining QoS requirement against the data that has arrived and
/// the energy that can be spent on it. Returns the earliest violation.
std::optional<Infeasible> check_solution(const PreparedScenario& scenario, const IterationState& state);

struct Finished {
  double rate = 0.0;
  double length = 0.0;
};
enum class Mode { MinTime, MinEnergy };
using FinishDecision = std::variant<Finished, Mode>;

/// Decides whether the remaining data can go out in one even-power epoch and,
/// if not, which epoch selection rule applies.
FinishDecision check_finish(const PreparedScenario& scenario, const IterationState& state,
                            const BoundPair& bounds, const RateBounds& rb);

/// Picks the next epoch (rate, length); the overflow is filled in by `advance`.
std::variant<Epoch, Infeasible> get_epoch(const PreparedScenario& scenario, const IterationState& state,
                                          const BoundPair& bounds, const RateBounds& rb, Mode mode);

/// Executes `epoch` from state.tau, charging arrivals and recording overflows.
/// The epoch's overflow_at_end is updated.
IterationState advance(const PreparedScenario& scenario, const IterationState& state, Epoch& epoch);

SolveOutcome solve(const PreparedScenario& scenario);
SolveOutcome solve(const Scenario& scenario);

}  // namespace ehs
