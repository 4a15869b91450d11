#pragma once

#include <string>
#include <vector>

#include "ehs/scenario.hpp"
#include "ehs/scheduler.hpp"

namespace ehs {

/// Outcome of one named check; `time` and `detail` locate the first failure.
struct CheckResult {
  std::string name;
  bool passed = true;
  double time = 0.0;
  std::string detail;
};

/// Check names, in report order.
inline constexpr const char* kCheckStructure = "structure";
inline constexpr const char* kCheckPiecewiseLinear = "piecewise_linear";
inline constexpr const char* kCheckEnergyCausality = "energy_causality";
inline constexpr const char* kCheckDataCausality = "data_causality";
inline constexpr const char* kCheckQos = "qos";
inline constexpr const char* kCheckCompletion = "completion";
inline constexpr const char* kCheckOverflowRecord = "overflow_record";
inline constexpr const char* kCheckBatteryEmpty = "battery_empty_at_end";
inline constexpr const char* kCheckOverflowBuffer = "overflow_with_empty_buffer";
inline constexpr const char* kCheckRateChange = "rate_change";

struct ValidationReport {
  std::vector<CheckResult> checks;

  /// Every check passed, including the optimality conditions.
  bool ok() const;
  /// The schedule is feasible: structure, causality, QoS, completion and the
  /// overflow record hold. Optimality conditions are not required.
  bool constraints_ok() const;
  const CheckResult* find(const std::string& name) const;
  std::vector<const CheckResult*> failures() const;
};

/// Re-simulates `schedule` on `scenario` and checks feasibility plus the
/// structural properties of an optimal schedule. `tol` is relative to the
/// scenario's total data and harvested energy.
ValidationReport validate(const Scenario& scenario, const Schedule& schedule, double tol = 1e-6);

}  // namespace ehs
