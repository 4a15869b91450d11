#include "ehs/power_rate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ehs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Energy per bit at rate r, g(r) / r, continuous at r = 0.
double energy_per_bit(const PowerRateModel& model, double r) {
  if (r == 0.0) return model.marginal_cost_at_zero();
  return std::visit(
      Overloaded{
          [r](const ShannonModel& m) {
            return m.noise * std::expm1(r * std::numbers::ln2 / m.bandwidth) / r;
          },
          [r](const MonomialModel& m) { return m.scale * std::pow(r, m.exponent - 1.0); },
      },
      model.params());
}

// Enough halvings to reach adjacent doubles even for roots near the denormals.
constexpr int kMaxBisection = 2200;

}  // namespace

PowerRateModel::PowerRateModel(ShannonModel m) : params_(m) {
  if (!(m.bandwidth > 0.0) || !(m.noise > 0.0))
    throw std::domain_error("shannon model needs bandwidth > 0 and noise > 0");
}

PowerRateModel::PowerRateModel(MonomialModel m) : params_(m) {
  if (!(m.exponent > 1.0) || !(m.scale > 0.0))
    throw std::domain_error("monomial model needs exponent > 1 and scale > 0");
}

double PowerRateModel::power(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("power: negative rate " + std::to_string(r));
  return std::visit(
      Overloaded{
          [r](const ShannonModel& m) {
            return m.noise * std::expm1(r * std::numbers::ln2 / m.bandwidth);
          },
          [r](const MonomialModel& m) { return m.scale * std::pow(r, m.exponent); },
      },
      params_);
}

double PowerRateModel::rate(double p) const {
  if (!(p >= 0.0)) throw std::domain_error("rate: negative power " + std::to_string(p));
  return std::visit(
      Overloaded{
          [p](const ShannonModel& m) { return m.bandwidth * std::log1p(p / m.noise) / std::numbers::ln2; },
          [p](const MonomialModel& m) { return std::pow(p / m.scale, 1.0 / m.exponent); },
      },
      params_);
}

double PowerRateModel::marginal_cost_at_zero() const {
  return std::visit(Overloaded{
                        [](const ShannonModel& m) { return m.noise * std::numbers::ln2 / m.bandwidth; },
                        [](const MonomialModel&) { return 0.0; },
                    },
                    params_);
}

MaxBits max_bits(const PowerRateModel& model, double energy, double t) {
  if (!(energy >= 0.0)) throw std::domain_error("max_bits: negative energy");
  if (!(t >= 0.0)) throw std::domain_error("max_bits: negative duration");
  if (energy == 0.0) return {0.0, false};
  if (t == 0.0) return {0.0, true};
  if (std::isinf(t)) return {max_bits_limit(model, energy), false};
  return {model.rate(energy / t) * t, false};
}

double max_bits_limit(const PowerRateModel& model, double energy) {
  const double c0 = model.marginal_cost_at_zero();
  if (energy == 0.0) return 0.0;
  return c0 > 0.0 ? energy / c0 : std::numeric_limits<double>::infinity();
}

std::optional<EvenAllocation> even_allocation(const PowerRateModel& model, double bits,
                                              double energy) {
  if (!(bits >= 0.0) || !(energy >= 0.0))
    throw std::domain_error("even_allocation: bits and energy must be >= 0");
  if (bits == 0.0) return EvenAllocation{0.0, 0.0};
  // bits * g(r)/r is increasing in r; its infimum is bits * g'(0).
  const double target = energy / bits;
  if (!(target > model.marginal_cost_at_zero())) return std::nullopt;

  double lo = 0.0;
  double hi = 1.0;
  int guard = 0;
  while (energy_per_bit(model, hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2000) throw std::runtime_error("even_allocation: rate bracket diverged");
  }
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (energy_per_bit(model, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // The lower endpoint never overspends the budget.
  const double r = lo > 0.0 ? lo : hi;
  return EvenAllocation{bits / r, r};
}

}  // namespace ehs
