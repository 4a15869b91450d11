#include "ehs/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ehs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Energy arrivals strictly after tau, relative to tau.
std::vector<Jump> future_energy(const PreparedScenario& sc, double tau) {
  std::vector<Jump> out;
  for (const auto& a : sc.energy().arrivals())
    if (a.time > tau + sc.time_eps()) out.push_back({a.time - tau, a.amount});
  return out;
}

struct RelativeCurves {
  Staircase data;
  Staircase qos;
  Staircase battery;  // B_A relative to tau, starting from the current charge
  std::vector<Jump> energy;
};

RelativeCurves relative_curves(const PreparedScenario& sc, const IterationState& st) {
  RelativeCurves rc;
  rc.data = sc.data_arrivals().shift_rescale(st.tau, st.sent);
  rc.qos = sc.qos().shift_rescale(st.tau, st.sent);
  rc.energy = future_energy(sc, st.tau);
  rc.battery = Staircase(rc.energy, st.battery, 0.0);
  return rc;
}

double snap_to_event(const PreparedScenario& sc, double t) {
  for (const auto& e : sc.events())
    if (std::abs(e.time - t) <= sc.time_eps()) return e.time;
  return t;
}

}  // namespace

IterationState initial_state(const PreparedScenario& sc) {
  IterationState st;
  st.timeline = sc.energy();
  BatteryState b{0.0, sc.c_max()};
  const auto& first = sc.energy().arrivals().front();
  const double lost = b.charge(first.amount);
  if (lost > sc.energy_tol()) st.timeline.record_overflow(first.time, lost);
  st.battery = b.level;
  return st;
}

std::vector<EventTime> remaining_events(const PreparedScenario& sc, double tau) {
  std::vector<EventTime> out;
  for (const auto& e : sc.events())
    if (e.time > tau + sc.time_eps()) out.push_back({e.time - tau, e.tags});
  return out;
}

BoundPair iteration_bounds(const PreparedScenario& sc, const IterationState& st) {
  const RelativeCurves rc = relative_curves(sc, st);
  const std::vector<EventTime> events = remaining_events(sc, st.tau);

  std::vector<double> energy_times;
  std::vector<Jump> emin;
  double must_spend = 0.0;
  for (const auto& a : rc.energy) {
    energy_times.push_back(a.time);
    const double need = std::max(0.0, rc.battery.eval(a.time, Side::Right) - sc.c_max());
    if (need > must_spend) emin.push_back({a.time, need - must_spend});
    must_spend = std::max(must_spend, need);
  }
  const Staircase battery_map = battery_mapping(rc.battery, sc.model(), energy_times);
  const Staircase emin_map = emin_mapping(Staircase(std::move(emin), 0.0, 0.0), sc.model(), energy_times);
  const double battery_until = energy_times.empty() ? 0.0 : energy_times.back();

  return merge_bounds(rc.data, battery_map, battery_until, rc.qos, emin_map, events, sc.data_tol());
}

std::optional<Infeasible> check_solution(const PreparedScenario& sc, const IterationState& st) {
  const RelativeCurves rc = relative_curves(sc, st);
  const double tol = sc.data_tol();

  const double due_now = rc.qos.eval(0.0, Side::Right);
  if (due_now > tol) return Infeasible{InfeasibleKind::Data, st.tau, due_now, 0.0, st.battery, st.tau};

  for (const auto& e : remaining_events(sc, st.tau)) {
    if (!(e.tags & kQosEvent)) continue;
    const double required = rc.qos.eval(e.time, Side::Right);
    const double arrived = rc.data.eval(e.time, Side::Left);
    const double energy = rc.battery.eval(e.time, Side::Left);
    const double reach = max_bits(sc.model(), energy, e.time).bits;
    const double abs_time = st.tau + e.time;
    if (required > arrived + tol) return Infeasible{InfeasibleKind::Data, abs_time, required, arrived, energy, st.tau};
    if (required > reach + tol) return Infeasible{InfeasibleKind::Energy, abs_time, required, reach, energy, st.tau};
  }

  // No amount of waiting carries the rest on the energy still to come.
  const double remaining = sc.total_data() - st.sent;
  const double energy = rc.battery.total();
  const double limit = max_bits_limit(sc.model(), energy);
  if (remaining > limit + tol)
    return Infeasible{InfeasibleKind::EnergyExhausted, kInf, remaining, limit, energy, st.tau};
  return std::nullopt;
}

FinishDecision check_finish(const PreparedScenario& sc, const IterationState& st, const BoundPair& bounds,
                            const RateBounds& rb) {
  const double tol = bounds.data_tol;
  const double total = bounds.remaining;

  // The fastest admissible line gets stuck under the upper bound before all
  // the data is out: no single epoch can finish from here.
  if (std::isfinite(rb.r_max) && data_in_crossing(rb.r_max, bounds) < total - tol) return Mode::MinEnergy;

  // Pool the battery with arrivals 1..i and find the first pool whose even
  // spending ends before the next arrival it does not count on.
  const std::vector<Jump> arrivals = future_energy(sc, st.tau);
  double pool = st.battery;
  for (std::size_t i = 0; i <= arrivals.size(); ++i) {
    if (i > 0) pool += arrivals[i - 1].amount;
    const auto even = even_allocation(sc.model(), total, pool);
    const double next_arrival = i < arrivals.size() ? arrivals[i].time : kInf;
    if (!even || even->duration > next_arrival) continue;
    const double rate = even->rate;
    const double t_hat = even->duration;

    // The pool would be spent before its last arrival: run the battery dry
    // at that arrival as fast as the corridor allows.
    if (i > 0 && arrivals[i - 1].time >= t_hat) return std::isfinite(rb.r_max) ? Mode::MinTime : Mode::MinEnergy;
    if (rate > rb.r_max * (1.0 + 1e-12) + 1e-15) return Mode::MinTime;
    if (rate < rb.r_min * (1.0 - 1e-12) - 1e-15) return Mode::MinEnergy;
    if (!line_feasible(rate, bounds, kInf)) return Mode::MinEnergy;
    // Spending the pool evenly must not lose energy to overflow on the way.
    const bool spills = std::any_of(bounds.events.begin(), bounds.events.end(), [&](const BoundEvent& e) {
      return e.time < t_hat && std::min(rate * e.time, total) < e.lower_emin - tol;
    });
    if (spills) return Mode::MinEnergy;
    return Finished{rate, t_hat};
  }
  return Mode::MinEnergy;
}

std::variant<Epoch, Infeasible> get_epoch(const PreparedScenario& sc, const IterationState& st,
                                          const BoundPair& bounds, const RateBounds& rb, Mode mode) {
  double rate = 0.0;
  double end = kInf;
  if (mode == Mode::MinTime) {
    rate = rb.r_max;
    end = rb.z_max;
  } else if (rb.break_side == BoundSide::Lower) {
    rate = rb.r_max;
    end = rb.z_max;
  } else if (rb.break_side == BoundSide::Upper) {
    rate = rb.r_min;
    end = rb.z_min;
  } else if (std::isfinite(rb.z_min)) {
    rate = rb.r_min;
    end = rb.z_min;
  } else {
    rate = rb.r_max;
    end = rb.z_max;
  }

  if (!std::isfinite(end) || !std::isfinite(rate)) {
    double energy = st.battery;
    for (const auto& a : future_energy(sc, st.tau)) energy += a.amount;
    return Infeasible{InfeasibleKind::EnergyExhausted, kInf, bounds.remaining,
                      max_bits_limit(sc.model(), energy), energy, st.tau};
  }
  if (mode == Mode::MinEnergy) {
    if (const auto touch = first_crossing(rate, bounds); touch && touch->time < end) end = touch->time;
  }

  // Past the last energy arrival the corridor carries no battery bound, so the
  // chosen line is checked against the remaining budget here.
  const RelativeCurves rc = relative_curves(sc, st);
  const double power = sc.model().power(rate);
  const auto starved = [&](double z) { return power * z > rc.battery.eval(z, Side::Left) + sc.energy_tol(); };
  double short_at = starved(end) ? end : kInf;
  for (const auto& a : rc.energy)
    if (a.time <= end && starved(a.time)) {
      short_at = a.time;
      break;
    }
  if (std::isfinite(short_at)) {
    const double energy = rc.battery.eval(short_at, Side::Left);
    return Infeasible{InfeasibleKind::Energy, st.tau + short_at, rate * short_at,
                      max_bits(sc.model(), energy, short_at).bits, energy, st.tau};
  }
  return Epoch{st.tau, rate, end, 0.0};
}

IterationState advance(const PreparedScenario& sc, const IterationState& st, Epoch& epoch) {
  const double etol = sc.energy_tol();
  const double end = snap_to_event(sc, st.tau + epoch.length);
  epoch.tau = st.tau;
  epoch.length = end - st.tau;
  epoch.overflow_at_end = 0.0;
  const double power = sc.model().power(epoch.rate);

  IterationState next = st;
  BatteryState b{st.battery, sc.c_max()};
  double t = st.tau;
  const auto drain = [&](double until) {
    b.level -= power * (until - t);
    if (b.level < -etol)
      throw std::logic_error("scheduler: battery driven negative at t = " + std::to_string(until));
    b.level = std::max(0.0, b.level);
    t = until;
  };
  for (const auto& a : sc.energy().arrivals()) {
    if (a.time <= st.tau + sc.time_eps() || a.time > end) continue;
    drain(a.time);
    const double lost = b.charge(a.amount);
    if (lost > etol) {
      next.timeline.record_overflow(a.time, lost);
      if (a.time == end) epoch.overflow_at_end = lost;
    }
  }
  drain(end);

  next.tau = end;
  next.battery = b.level;
  next.spent = st.spent + power * epoch.length;
  next.sent = st.sent + epoch.rate * epoch.length;
  const double total = sc.total_data();
  if (next.sent > total + sc.data_tol())
    throw std::logic_error("scheduler: epoch sends more data than has arrived");
  next.sent = std::min(next.sent, total);
  return next;
}

SolveOutcome solve(const PreparedScenario& sc) {
  Schedule out;
  IterationState st = initial_state(sc);
  const std::size_t max_iterations = sc.events().size() * 4 + 8;
  const double tol = sc.data_tol();

  for (std::size_t it = 0;; ++it) {
    if (st.sent >= sc.total_data() - tol) break;
    if (it >= max_iterations) throw std::runtime_error("scheduler: iteration limit exceeded");

    if (auto bad = check_solution(sc, st)) return *bad;
    const BoundPair bounds = iteration_bounds(sc, st);
    const RateBounds rb = rate_bounds(bounds);
    const FinishDecision decision = check_finish(sc, st, bounds, rb);

    Epoch epoch;
    if (const auto* fin = std::get_if<Finished>(&decision)) {
      epoch = Epoch{st.tau, fin->rate, fin->length, 0.0};
    } else {
      auto picked = get_epoch(sc, st, bounds, rb, std::get<Mode>(decision));
      if (auto* bad = std::get_if<Infeasible>(&picked)) return *bad;
      epoch = std::get<Epoch>(picked);
    }
    st = advance(sc, st, epoch);
    out.epochs.push_back(epoch);
    if (std::holds_alternative<Finished>(decision)) st.sent = sc.total_data();
  }

  out.completion_time = st.tau;
  out.overflows = st.timeline.overflows();
  out.energy_spent = st.spent;
  return out;
}

SolveOutcome solve(const Scenario& scenario) { return solve(PreparedScenario(scenario)); }

}  // namespace ehs
