#pragma once

#include <vector>

#include "ehs/staircase.hpp"

namespace ehs {

/// Energy packets harvested over time plus the battery overflows recorded so far.
/// The first arrival is at t = 0 and carries the initial battery charge.
class EnergyTimeline {
 public:
  EnergyTimeline() = default;
  explicit EnergyTimeline(std::vector<Jump> arrivals);

  const std::vector<Jump>& arrivals() const { return arrivals_; }
  const std::vector<Jump>& overflows() const { return overflows_; }

  /// Records the overflow of the arrival at time `t` (must be an arrival time).
  void record_overflow(double t, double amount);

  /// Overflow recorded at arrival `t`, or 0.
  double overflow_at(double t) const;

  /// B_A(t; t_x): harvested energy up to t minus overflows recorded at
  /// arrivals no later than min(t, t_x).
  double accumulated_battery(double t_x, double t) const;

  /// B_A(.; t_x) as a step curve.
  Staircase accumulated_curve(double t_x) const;

  double total_harvested() const;

 private:
  std::vector<Jump> arrivals_;
  std::vector<Jump> overflows_;
};

/// Battery charge bounded by its capacity.
struct BatteryState {
  double level = 0.0;
  double capacity = 0.0;

  /// Adds an arrival, returning the energy lost to overflow.
  double charge(double amount);
};

/// E_min(t; t_x) = max(0, B_A(t; t_x) - C_max).
double min_energy_expenditure(const EnergyTimeline& timeline, double c_max, double t_x, double t);

}  // namespace ehs
