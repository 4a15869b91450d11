#include "ehs/baseline.hpp"

#include <algorithm>
#include <limits>

namespace ehs {

namespace {

// Earliest QoS requirement missed by the departure curve of `epochs`, if any.
std::optional<Infeasible> qos_miss(const PreparedScenario& sc, const std::vector<Epoch>& epochs, double until,
                                   double battery) {
  for (const auto& q : sc.qos().jumps()) {
    if (q.time > until) break;
    double sent = 0.0;
    for (const auto& e : epochs) sent += e.rate * std::clamp(q.time - e.tau, 0.0, e.length);
    const double due = sc.qos().eval(q.time, Side::Right);
    if (sent < due - sc.data_tol()) return Infeasible{InfeasibleKind::Energy, q.time, due, sent, battery, 0.0};
  }
  return std::nullopt;
}

}  // namespace

SolveOutcome ebs_solve(const PreparedScenario& sc) {
  std::vector<double> times;
  for (const auto& e : sc.events())
    if (e.tags & (kDataEvent | kEnergyEvent)) times.push_back(e.time);

  const auto& arrivals = sc.energy().arrivals();
  EnergyTimeline timeline = sc.energy();
  BatteryState battery{0.0, sc.c_max()};
  const auto charge_at = [&](double t) {
    for (const auto& a : arrivals)
      if (a.time == t) {
        const double lost = battery.charge(a.amount);
        if (lost > sc.energy_tol()) timeline.record_overflow(t, lost);
      }
  };

  std::vector<Epoch> epochs;
  double sent = 0.0;
  double spent = 0.0;
  const double total = sc.total_data();
  const double tol = sc.data_tol();

  double t = 0.0;
  charge_at(0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] <= t) continue;
    const double next = times[k];
    const double span = next - t;
    const double buffer = std::max(0.0, sc.data_arrivals().eval(t, Side::Right) - sent);
    const double rate = buffer > tol ? buffer / span : 0.0;
    const double need = sc.model().power(rate) * span;
    if (need > battery.level + sc.energy_tol())
      return Infeasible{InfeasibleKind::Energy, next, buffer, max_bits(sc.model(), battery.level, span).bits,
                        battery.level, t};
    epochs.push_back({t, rate, span, 0.0});
    battery.level = std::max(0.0, battery.level - need);
    spent += need;
    sent += rate * span;
    if (auto bad = qos_miss(sc, epochs, next, battery.level)) return *bad;
    t = next;
    charge_at(t);
    epochs.back().overflow_at_end = timeline.overflow_at(t);
  }

  const double left = total - sent;
  if (left > tol) {
    const auto even = even_allocation(sc.model(), left, battery.level);
    if (!even)
      return Infeasible{InfeasibleKind::EnergyExhausted, std::numeric_limits<double>::infinity(), left,
                        max_bits_limit(sc.model(), battery.level), battery.level, t};
    epochs.push_back({t, even->rate, even->duration, 0.0});
    spent += sc.model().power(even->rate) * even->duration;
    sent = total;
  }
  if (auto bad = qos_miss(sc, epochs, std::numeric_limits<double>::infinity(), battery.level)) return *bad;

  // Idle epochs after the last bit do not belong to the schedule.
  while (!epochs.empty() && epochs.back().rate == 0.0) epochs.pop_back();

  Schedule out;
  out.epochs = std::move(epochs);
  out.completion_time = out.epochs.empty() ? 0.0 : out.epochs.back().tau + out.epochs.back().length;
  for (const auto& o : timeline.overflows())
    if (o.time <= out.completion_time) out.overflows.push_back(o);
  out.energy_spent = spent;
  return out;
}

SolveOutcome ebs_solve(const Scenario& scenario) { return ebs_solve(PreparedScenario(scenario)); }

}  // namespace ehs
