#include "ehs/mapping.hpp"

#include <algorithm>
#include <cmath>

namespace ehs {

namespace {

// Rebuilds a non-decreasing staircase from values held on consecutive events.
// values[k] is the value right after times[k]; `base` is the value before.
Staircase from_values(double base, std::span<const double> times, std::span<const double> values) {
  std::vector<Jump> jumps;
  jumps.reserve(times.size());
  double prev = base;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double v = std::max(prev, values[k]);
    if (v > prev) jumps.push_back({times[k], v - prev});
    prev = v;
  }
  return Staircase(std::move(jumps), base, 0.0);
}

bool within(double z, double t_end) { return z <= t_end * (1.0 + 1e-12) + 1e-15; }

}  // namespace

Staircase battery_mapping(const Staircase& battery, const PowerRateModel& model,
                          std::span<const double> energy_events) {
  if (energy_events.empty()) return {};
  std::vector<double> at_event(energy_events.size());
  for (std::size_t k = 0; k < energy_events.size(); ++k)
    at_event[k] = max_bits(model, battery.eval(energy_events[k], Side::Left), energy_events[k]).bits;

  // On (e_{k-1}, e_k] the curve equals at_event[k].
  std::vector<double> after(energy_events.size());
  for (std::size_t k = 0; k < energy_events.size(); ++k)
    after[k] = k + 1 < energy_events.size() ? at_event[k + 1] : at_event[k];
  return from_values(at_event.front(), energy_events, after);
}

Staircase emin_mapping(const Staircase& min_expenditure, const PowerRateModel& model,
                       std::span<const double> energy_events) {
  std::vector<double> at_event(energy_events.size());
  for (std::size_t k = 0; k < energy_events.size(); ++k) {
    const double need = min_expenditure.eval(energy_events[k], Side::Right);
    at_event[k] = need > 0.0 ? max_bits(model, need, energy_events[k]).bits : 0.0;
  }
  return from_values(0.0, energy_events, at_event);
}

BoundPair merge_bounds(const Staircase& arrivals, const Staircase& battery_map, double battery_until,
                       const Staircase& qos, const Staircase& emin_map,
                       std::span<const EventTime> events, double data_tol) {
  BoundPair out;
  out.remaining = arrivals.total();
  out.data_tol = data_tol;
  out.events.reserve(events.size());

  double attainable = 0.0;
  double lower = 0.0;
  for (const auto& ev : events) {
    BoundEvent b;
    b.time = ev.time;
    b.tags = ev.tags;
    b.upper = arrivals.eval(ev.time, Side::Left);
    if (ev.time <= battery_until) b.upper = std::min(b.upper, battery_map.eval(ev.time, Side::Left));
    b.lower_qos = qos.eval(ev.time, Side::Right);
    b.lower_emin = emin_map.eval(ev.time, Side::Right);
    lower = std::max({lower, b.lower_qos, b.lower_emin});
    b.lower = lower;
    const double prev_attainable = attainable;
    attainable = std::max({attainable, b.lower_qos, std::min(b.lower_emin, b.upper)});
    b.attainable = attainable;
    b.lower_corner = attainable > prev_attainable + data_tol;
    out.events.push_back(b);
  }
  for (std::size_t k = 0; k < out.events.size(); ++k) {
    const double next = k + 1 < out.events.size() ? out.events[k + 1].upper : out.remaining;
    out.events[k].upper_corner = out.events[k].upper < next - data_tol;
  }

  std::vector<double> times(out.events.size());
  std::vector<double> upper_after(out.events.size());
  std::vector<double> lower_at(out.events.size());
  for (std::size_t k = 0; k < out.events.size(); ++k) {
    times[k] = out.events[k].time;
    upper_after[k] = k + 1 < out.events.size() ? out.events[k + 1].upper : out.remaining;
    lower_at[k] = out.events[k].lower;
  }
  const double upper_base = out.events.empty() ? out.remaining : out.events.front().upper;
  out.d_max = from_values(upper_base, times, upper_after);
  out.d_min = from_values(0.0, times, lower_at);
  return out;
}

RateBounds rate_bounds(const BoundPair& bounds) {
  RateBounds rb;
  const double tol = bounds.data_tol;
  for (const auto& e : bounds.events) {
    const double z = e.time;
    if (e.lower_corner && e.attainable > rb.r_max * z + tol) {
      rb.break_side = BoundSide::Lower;
      rb.break_time = z;
      break;
    }
    if (e.upper_corner && e.upper < rb.r_min * z - tol) {
      rb.break_side = BoundSide::Upper;
      rb.break_time = z;
      break;
    }
    if (e.upper_corner && e.upper < rb.r_max * z - tol) {
      rb.r_max = e.upper / z;
      rb.z_max = z;
    }
    if (e.lower_corner && e.attainable > rb.r_min * z + tol) {
      rb.r_min = e.attainable / z;
      rb.z_min = z;
    }
  }
  return rb;
}

std::optional<Crossing> first_violation(double rate, const BoundPair& bounds, double t_end) {
  const double tol = bounds.data_tol;
  for (const auto& e : bounds.events) {
    if (!within(e.time, t_end)) break;
    const double d = std::min(rate * e.time, bounds.remaining);
    if (d > e.upper + tol) return Crossing{e.time, BoundSide::Upper, e.upper};
    if (d < e.attainable - tol) return Crossing{e.time, BoundSide::Lower, d};
  }
  return std::nullopt;
}

bool line_feasible(double rate, const BoundPair& bounds, double t_end) {
  return !first_violation(rate, bounds, t_end).has_value();
}

std::optional<Crossing> first_crossing(double rate, const BoundPair& bounds) {
  const double tol = bounds.data_tol;
  for (const auto& e : bounds.events) {
    const double d = std::min(rate * e.time, bounds.remaining);
    if (d > e.upper + tol || (e.upper_corner && d >= e.upper - tol))
      return Crossing{e.time, BoundSide::Upper, std::min(d, e.upper)};
    if (d < e.attainable - tol || (e.lower_corner && d <= e.attainable + tol))
      return Crossing{e.time, BoundSide::Lower, d};
  }
  return std::nullopt;
}

double data_in_crossing(double rate, const BoundPair& bounds) {
  if (std::isinf(rate)) return bounds.remaining;
  const double tol = bounds.data_tol;
  for (const auto& e : bounds.events) {
    const double d = std::min(rate * e.time, bounds.remaining);
    if (d > e.upper + tol) return e.upper;
  }
  return rate > 0.0 ? bounds.remaining : 0.0;
}

}  // namespace ehs
