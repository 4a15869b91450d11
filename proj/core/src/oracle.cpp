#include "ehs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehs {

namespace {

std::size_t slot_of(double t, double dt) {
  const double k = t / dt;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-6) throw std::domain_error("oracle: event time is not a multiple of dt");
  return static_cast<std::size_t>(r);
}

}  // namespace

OracleResult dp_min_time(const Scenario& scenario, const OracleConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::domain_error("oracle: dt must be > 0");
  const PreparedScenario sc(scenario);
  const PowerRateModel& model = sc.model();
  OracleResult res;

  const double total = sc.total_data();
  if (total == 0.0) {
    res.feasible = true;
    return res;
  }
  const double eq = cfg.energy_quantum > 0.0 ? cfg.energy_quantum : sc.energy().total_harvested() * 1e-7;
  const double dq_req = cfg.data_quantum > 0.0 ? cfg.data_quantum : total / 16000.0;
  const auto n = static_cast<std::int64_t>(std::ceil(total / dq_req - 1e-9));
  const double dq = total / static_cast<double>(n);
  const double dt = cfg.dt;

  for (const auto& e : sc.events()) slot_of(e.time, dt);
  const std::size_t slots = slot_of(sc.horizon(), dt);
  res.slots = slots;
  res.data_levels = static_cast<std::size_t>(n) + 1;
  if (static_cast<double>(slots + 1) * static_cast<double>(n + 1) > static_cast<double>(cfg.max_cells))
    throw OracleSizeError("oracle: " + std::to_string(slots + 1) + " slots x " + std::to_string(n + 1) +
                          " data levels exceeds the limit of " + std::to_string(cfg.max_cells) +
                          " cells; use a larger dt or data quantum");

  const auto cap = static_cast<std::int64_t>(std::floor(sc.c_max() / eq));
  std::vector<std::int64_t> harvest(slots + 1, 0);
  for (const auto& a : sc.energy().arrivals())
    harvest[slot_of(a.time, dt)] += static_cast<std::int64_t>(std::floor(a.amount / eq));
  std::vector<std::int64_t> limit(slots + 1);
  std::vector<std::int64_t> need(slots + 1);
  for (std::size_t k = 0; k <= slots; ++k) {
    const double t = static_cast<double>(k) * dt;
    limit[k] = std::min(n, static_cast<std::int64_t>(std::floor(sc.data_arrivals().eval(t) / dq + 1e-9)));
    need[k] = static_cast<std::int64_t>(std::ceil(sc.qos().eval(t) / dq - 1e-9));
  }

  // cost[q]: energy quanta to send q data quanta in one slot.
  std::vector<std::int64_t> cost;
  for (std::int64_t q = 0; q <= n; ++q) {
    const double joules = model.power(static_cast<double>(q) * dq / dt) * dt;
    const double c = std::ceil(joules / eq);
    if (c > static_cast<double>(cap)) break;
    cost.push_back(static_cast<std::int64_t>(c));
  }

  std::vector<std::int64_t> best(static_cast<std::size_t>(n) + 1, -1);
  if (need[0] > 0) return res;
  best[0] = std::min(cap, harvest[0]);

  const auto& qos_jumps = sc.qos().jumps();
  const auto line_meets_qos = [&](double t0, double sent0, double rate, double t1) {
    for (const auto& j : qos_jumps) {
      if (j.time <= t0 || j.time > t1) continue;
      if (sent0 + rate * (j.time - t0) < sc.qos().eval(j.time) - 1e-12 * total) return false;
    }
    return true;
  };

  std::vector<char> at_event(slots + 1, 0);
  for (const auto& e : sc.events()) at_event[slot_of(e.time, dt)] = 1;
  const auto& data_jumps = sc.data_arrivals().jumps();
  const auto line_is_causal = [&](double t0, double sent0, double rate, double t1) {
    for (const auto& j : data_jumps) {
      if (j.time <= t0) continue;
      const double at = std::min(j.time, t1);
      if (sent0 + rate * (at - t0) > sc.data_arrivals().eval(j.time, Side::Left) + 1e-12 * total) return false;
    }
    return true;
  };

  double best_t = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> next(best.size());
  for (std::size_t k = 0; k <= slots; ++k) {
    const double t = static_cast<double>(k) * dt;
    // Every epoch of an optimal schedule starts at an event, so a final
    // constant-rate stretch only needs to be tried from event boundaries.
    if (at_event[k]) {
      for (std::int64_t d = 0; d <= n; ++d) {
        const std::int64_t b = best[static_cast<std::size_t>(d)];
        if (b < 0) continue;
        if (d == n) {
          best_t = std::min(best_t, t);
          continue;
        }
        const double sent = static_cast<double>(d) * dq;
        const auto even = even_allocation(model, total - sent, static_cast<double>(b) * eq);
        if (even && t + even->duration < best_t && line_meets_qos(t, sent, even->rate, t + even->duration) &&
            line_is_causal(t, sent, even->rate, t + even->duration))
          best_t = t + even->duration;
      }
    } else if (best[static_cast<std::size_t>(n)] >= 0) {
      best_t = std::min(best_t, t);
    }
    if (k == slots || best_t <= static_cast<double>(k + 1) * dt) break;

    std::fill(next.begin(), next.end(), -1);
    for (std::int64_t d = 0; d <= n; ++d) {
      const std::int64_t b = best[static_cast<std::size_t>(d)];
      if (b < 0) continue;
      const std::int64_t qmax = std::min<std::int64_t>(static_cast<std::int64_t>(cost.size()) - 1, limit[k] - d);
      for (std::int64_t q = 0; q <= qmax; ++q) {
        const std::int64_t c = cost[static_cast<std::size_t>(q)];
        if (c > b) break;
        auto& slot = next[static_cast<std::size_t>(d + q)];
        slot = std::max(slot, b - c);
      }
    }
    // Apply QoS and arrivals at the slot end, then drop dominated states
    // (less data sent and no more battery).
    std::int64_t richest = -1;
    bool any = false;
    for (std::int64_t d = n; d >= 0; --d) {
      auto& b = next[static_cast<std::size_t>(d)];
      if (b < 0) continue;
      if (d < need[k + 1]) {
        b = -1;
        continue;
      }
      b = std::min(cap, b + harvest[k + 1]);
      if (b <= richest) {
        b = -1;
        continue;
      }
      richest = b;
      any = true;
    }
    best.swap(next);
    if (!any) break;
  }

  if (std::isfinite(best_t)) {
    res.feasible = true;
    res.completion_time = best_t;
  }
  return res;
}

}  // namespace ehs
