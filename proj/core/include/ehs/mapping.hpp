#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ehs/power_rate.hpp"
#include "ehs/scenario.hpp"
#include "ehs/staircase.hpp"

namespace ehs {

// All curves here live in the coordinates of one solver iteration: the origin
// is the start of the epoch being decided, data and energy already spent are
// subtracted, and every event time is strictly positive.

/// Energy-causality bound mapped to bits at the energy arrivals:
/// max_bits(B(e^-), e). Between arrivals the curve holds the value of the next
/// arrival. A straight line can only run out of energy just before an arrival,
/// so the bound is meaningful up to the last arrival only; after it the
/// remaining budget is handled when the last epoch is sized.
Staircase battery_mapping(const Staircase& battery, const PowerRateModel& model,
                          std::span<const double> energy_events);

/// Overflow-avoidance bound mapped to bits, evaluated at energy arrivals:
/// max_bits(E_min(t_e^+), t_e), held until the next energy arrival.
Staircase emin_mapping(const Staircase& min_expenditure, const PowerRateModel& model,
                       std::span<const double> energy_events);

/// Merged corridor value at one event time.
struct BoundEvent {
  double time = 0.0;
  unsigned tags = 0;
  double upper = 0.0;        // D_max(t^-) = min(D_A(t^-), D_B_A(t))
  double lower = 0.0;        // D_min(t^+) = max(D_QoS(t), D_E_min(t))
  double lower_qos = 0.0;    // D_QoS(t)
  double lower_emin = 0.0;   // D_E_min(t)
  double attainable = 0.0;   // lower bound with unavoidable overflow allowed
  bool upper_corner = false;  // t in Z_max
  bool lower_corner = false;  // t in Z_min
};

/// The merged upper/lower corridor of one iteration.
///
/// `attainable` differs from `lower` only where the overflow bound cannot be
/// met (data not yet arrived, or battery drained): there the epoch may at most
/// reach the upper bound and the remaining excess is lost to overflow.
struct BoundPair {
  Staircase d_max;  // upper, next-event convention; D_max(inf) = remaining data
  Staircase d_min;  // lower, previous-event convention
  std::vector<BoundEvent> events;
  double remaining = 0.0;  // D_tot^(m)
  double data_tol = 1e-9;
};

/// `battery_until` is the last energy arrival; past it only data arrivals
/// bound the corridor from above.
BoundPair merge_bounds(const Staircase& arrivals, const Staircase& battery_map, double battery_until,
                       const Staircase& qos, const Staircase& emin_map,
                       std::span<const EventTime> events, double data_tol);

enum class BoundSide { Upper, Lower };

/// R_max / R_min of one iteration, found by sweeping the corner rates in time
/// order. The sweep stops at `break_time` when no single rate can satisfy every
/// corner seen so far; `break_side` says which bound closed the corridor.
struct RateBounds {
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double r_max = kInf;
  double z_max = kInf;
  double r_min = 0.0;
  double z_min = kInf;
  std::optional<BoundSide> break_side;
  double break_time = kInf;
};

RateBounds rate_bounds(const BoundPair& bounds);

/// True iff the line r*t stays within the corridor at every event in (0, t_end].
bool line_feasible(double rate, const BoundPair& bounds, double t_end);

struct Crossing {
  double time = 0.0;
  BoundSide side = BoundSide::Upper;
  double amount = 0.0;
};

/// First event in (0, t_end] where r*t leaves the corridor (strictly).
std::optional<Crossing> first_violation(double rate, const BoundPair& bounds,
                                        double t_end = RateBounds::kInf);

/// First corner where r*t meets or leaves the corridor; touching counts.
std::optional<Crossing> first_crossing(double rate, const BoundPair& bounds);

/// Bits the line r*t carries before it first breaks the upper bound, capped at
/// the remaining data.
double data_in_crossing(double rate, const BoundPair& bounds);

}  // namespace ehs
