#pragma once

#include <optional>
#include <variant>

namespace ehs {

/// AWGN link: g(r) = noise * (2^(r / bandwidth) - 1).
struct ShannonModel {
  double bandwidth = 1.0;
  double noise = 1.0;
};

/// g(r) = scale * r^exponent, exponent > 1.
struct MonomialModel {
  double exponent = 2.0;
  double scale = 1.0;
};

/// Convex, increasing power-rate function with g(0) = 0.
class PowerRateModel {
 public:
  PowerRateModel() = default;
  PowerRateModel(ShannonModel m);   // NOLINT(google-explicit-constructor)
  PowerRateModel(MonomialModel m);  // NOLINT(google-explicit-constructor)

  const std::variant<ShannonModel, MonomialModel>& params() const { return params_; }

  /// g(r), Watts. Throws std::domain_error for r < 0.
  double power(double rate) const;

  /// g^{-1}(p), bits/s. Throws std::domain_error for p < 0.
  double rate(double power) const;

  /// g'(0): the energy per bit of an arbitrarily slow transmission.
  double marginal_cost_at_zero() const;

 private:
  std::variant<ShannonModel, MonomialModel> params_{ShannonModel{}};
};

/// Largest number of bits a constant-rate transmission of length t can carry
/// with E Joules: g^{-1}(E / t) * t.
struct MaxBits {
  double bits = 0.0;
  bool degenerate = false;  // t == 0 with E > 0; bits is the t -> 0 limit
};
MaxBits max_bits(const PowerRateModel& model, double energy, double t);

/// Supremum of max_bits(E, t) over t (finite when g'(0) > 0).
double max_bits_limit(const PowerRateModel& model, double energy);

/// Constant-rate transmission of D bits that spends exactly E Joules.
struct EvenAllocation {
  double duration = 0.0;
  double rate = 0.0;
};

/// Solves g(D / T) * T = E for T by bisection on the rate. Returns nullopt when
/// no finite T exists (E = 0, or E <= D * g'(0)). D = 0 yields {0, 0}.
std::optional<EvenAllocation> even_allocation(const PowerRateModel& model, double bits,
                                              double energy);

}  // namespace ehs
