#include "ehs/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ehs {

double time_epsilon(double horizon) { return 1e-9 * std::max(1.0, std::abs(horizon)); }

namespace {

double horizon_of(const std::vector<Jump>& jumps) {
  double h = 0.0;
  for (const auto& j : jumps) h = std::max(h, j.time);
  return h;
}

}  // namespace

Staircase::Staircase(std::vector<Jump> jumps, double base, double coalesce_eps) : base_(base) {
  if (!(base >= 0.0)) throw std::domain_error("staircase base must be >= 0");
  for (const auto& j : jumps) {
    if (!(j.time >= 0.0) || !std::isfinite(j.time))
      throw std::domain_error("staircase jump time must be finite and >= 0, got " +
                              std::to_string(j.time));
    if (!(j.amount >= 0.0) || !std::isfinite(j.amount))
      throw std::domain_error("staircase increment must be finite and >= 0, got " +
                              std::to_string(j.amount));
  }
  std::stable_sort(jumps.begin(), jumps.end(),
                   [](const Jump& a, const Jump& b) { return a.time < b.time; });
  const double eps = coalesce_eps >= 0.0 ? coalesce_eps : time_epsilon(horizon_of(jumps));
  for (const auto& j : jumps) {
    if (j.amount == 0.0) continue;
    if (!jumps_.empty() && j.time - jumps_.back().time <= eps) {
      jumps_.back().amount += j.amount;
    } else {
      jumps_.push_back(j);
    }
  }
}

double Staircase::eval(double t, Side side) const {
  if (t < 0.0 || std::isnan(t)) throw std::domain_error("staircase evaluated at negative time");
  double v = base_;
  for (const auto& j : jumps_) {
    if (j.time < t || (side == Side::Right && j.time == t)) {
      v += j.amount;
    } else {
      break;
    }
  }
  return v;
}

double Staircase::total() const {
  double v = base_;
  for (const auto& j : jumps_) v += j.amount;
  return v;
}

Staircase Staircase::shift_rescale(double tau, double offset) const {
  if (!(tau >= 0.0)) throw std::domain_error("shift_rescale: tau must be >= 0");
  if (!(offset >= 0.0)) throw std::domain_error("shift_rescale: offset must be >= 0");

  // Walk the original values, subtract the offset, clamp, then re-derive jumps.
  double raw = base_;
  auto it = jumps_.begin();
  for (; it != jumps_.end() && it->time < tau; ++it) raw += it->amount;

  Staircase out;
  out.base_ = std::max(0.0, raw - offset);
  double prev = out.base_;
  for (; it != jumps_.end(); ++it) {
    raw += it->amount;
    const double v = std::max(0.0, raw - offset);
    if (v > prev) out.jumps_.push_back({it->time - tau, v - prev});
    prev = v;
  }
  return out;
}

Staircase qos_deadline(std::span<const Jump> packets, std::span<const double> theta) {
  if (packets.size() != theta.size())
    throw std::domain_error("qos_deadline: " + std::to_string(packets.size()) + " packets but " +
                            std::to_string(theta.size()) + " deadlines");
  std::vector<Jump> due;
  due.reserve(packets.size());
  for (std::size_t k = 0; k < packets.size(); ++k) {
    if (!(theta[k] >= 0.0)) throw std::domain_error("qos_deadline: deadline must be >= 0");
    due.push_back({packets[k].time + theta[k], packets[k].amount});
  }
  return Staircase(std::move(due));
}

Staircase qos_buffer(const Staircase& arrivals, double beta) {
  if (!(beta >= 0.0)) throw std::domain_error("qos_buffer: beta must be >= 0");
  return arrivals.shift_rescale(0.0, beta);
}

}  // namespace ehs
