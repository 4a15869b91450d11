#pragma once

#include <algorithm>
#include <vector>

#include "ehs/energy.hpp"
#include "ehs/power_rate.hpp"
#include "ehs/staircase.hpp"

namespace ehs {

/// How the minimum data departure D_QoS(t) is specified.
struct QosSpec {
  enum class Kind { None, Explicit, Deadline, Buffer };

  Kind kind = Kind::None;
  std::vector<Jump> requirements;  // Explicit: (q_k, Q_k) increments
  std::vector<double> deadlines;   // Deadline: theta_k per data packet, or one shared value
  double buffer = 0.0;             // Buffer: beta bits

  static QosSpec none() { return {}; }
  static QosSpec explicit_curve(std::vector<Jump> reqs) {
    return {Kind::Explicit, std::move(reqs), {}, 0.0};
  }
  static QosSpec deadline(std::vector<double> theta) { return {Kind::Deadline, {}, std::move(theta), 0.0}; }
  static QosSpec buffer_limit(double beta) { return {Kind::Buffer, {}, {}, beta}; }
};

/// Inputs of one offline scheduling problem. Units: seconds, bits, Joules.
struct Scenario {
  std::vector<Jump> energy;  // (e_j, E_j); first arrival at t = 0
  std::vector<Jump> data;    // (d_i, D_i)
  QosSpec qos;
  double c_max = 1.0;
  PowerRateModel model;
};

/// Kind of event at a time instant; several may coincide.
enum EventTag : unsigned { kDataEvent = 1u, kEnergyEvent = 2u, kQosEvent = 4u };

struct EventTime {
  double time = 0.0;
  unsigned tags = 0;
};

/// A validated scenario with canonical event times and its derived curves.
///
/// Event times closer than `time_eps()` are snapped to one value across all
/// three curves so that simultaneous events compare exactly equal.
class PreparedScenario {
 public:
  explicit PreparedScenario(const Scenario& scenario);

  const PowerRateModel& model() const { return model_; }
  double c_max() const { return c_max_; }
  const Staircase& data_arrivals() const { return data_; }
  const Staircase& qos() const { return qos_; }
  const EnergyTimeline& energy() const { return energy_; }
  const std::vector<EventTime>& events() const { return events_; }

  double total_data() const { return data_.total(); }
  double horizon() const { return horizon_; }
  double time_eps() const { return time_eps_; }
  /// Absolute tolerance for comparing amounts of data.
  double data_tol() const { return 1e-9 * std::max(1.0, total_data()); }
  /// Absolute tolerance for comparing amounts of energy.
  double energy_tol() const { return 1e-9 * std::max(1.0, energy_.total_harvested()); }

  bool is_event(double t) const;

 private:
  PowerRateModel model_;
  double c_max_ = 0.0;
  Staircase data_;
  Staircase qos_;
  EnergyTimeline energy_;
  std::vector<EventTime> events_;
  double horizon_ = 0.0;
  double time_eps_ = 0.0;
};

}  // namespace ehs
