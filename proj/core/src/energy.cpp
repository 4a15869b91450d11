#include "ehs/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ehs {

EnergyTimeline::EnergyTimeline(std::vector<Jump> arrivals) {
  Staircase merged(std::move(arrivals));
  if (merged.empty() || merged.jumps().front().time != 0.0)
    throw std::domain_error("energy timeline: the first energy arrival must be at t = 0");
  arrivals_.assign(merged.jumps().begin(), merged.jumps().end());
}

void EnergyTimeline::record_overflow(double t, double amount) {
  if (!(amount >= 0.0)) throw std::domain_error("overflow must be >= 0");
  auto arr = std::find_if(arrivals_.begin(), arrivals_.end(),
                          [t](const Jump& a) { return a.time == t; });
  if (arr == arrivals_.end()) throw std::domain_error("overflow recorded at a non-arrival time");
  if (amount > arr->amount * (1.0 + 1e-12) + 1e-15)
    throw std::domain_error("overflow exceeds the energy of its arrival");
  auto o = std::find_if(overflows_.begin(), overflows_.end(),
                        [t](const Jump& x) { return x.time == t; });
  if (o != overflows_.end()) {
    o->amount = amount;
  } else {
    overflows_.push_back({t, amount});
    std::sort(overflows_.begin(), overflows_.end(),
              [](const Jump& a, const Jump& b) { return a.time < b.time; });
  }
}

double EnergyTimeline::overflow_at(double t) const {
  for (const auto& o : overflows_)
    if (o.time == t) return o.amount;
  return 0.0;
}

double EnergyTimeline::accumulated_battery(double t_x, double t) const {
  double sum = 0.0;
  for (const auto& a : arrivals_) {
    if (a.time > t) break;
    sum += a.amount;
    if (a.time <= t_x) sum -= overflow_at(a.time);
  }
  return sum;
}

Staircase EnergyTimeline::accumulated_curve(double t_x) const {
  std::vector<Jump> net;
  net.reserve(arrivals_.size());
  for (const auto& a : arrivals_) {
    const double lost = a.time <= t_x ? overflow_at(a.time) : 0.0;
    net.push_back({a.time, std::max(0.0, a.amount - lost)});
  }
  return Staircase(std::move(net), 0.0, 0.0);
}

double EnergyTimeline::total_harvested() const {
  double sum = 0.0;
  for (const auto& a : arrivals_) sum += a.amount;
  return sum;
}

double BatteryState::charge(double amount) {
  const double lost = std::max(0.0, level + amount - capacity);
  level = std::min(capacity, level + amount);
  return lost;
}

double min_energy_expenditure(const EnergyTimeline& timeline, double c_max, double t_x, double t) {
  return std::max(0.0, timeline.accumulated_battery(t_x, t) - c_max);
}

}  // namespace ehs
