#pragma once

#include <span>
#include <vector>

namespace ehs {

/// Which one-sided limit to take when evaluating a step curve at a jump.
enum class Side { Left, Right };

/// Tolerance used to decide whether two event times coincide.
double time_epsilon(double horizon);

/// A timed amount: a packet arrival (seconds, bits or Joules) or a curve jump.
struct Jump {
  double time = 0.0;
  double amount = 0.0;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Right-continuous, non-decreasing step curve.
///
/// The value just before the first jump is `base()`; each jump adds a strictly
/// positive increment. Jump times are strictly increasing: arrivals closer than
/// `time_epsilon` are merged into one jump by summing their increments.
class Staircase {
 public:
  Staircase() = default;

  /// Builds a curve from unordered (time, increment) pairs. Zero increments are
  /// dropped; negative times or increments throw std::domain_error.
  explicit Staircase(std::vector<Jump> jumps, double base = 0.0, double coalesce_eps = -1.0);

  double base() const { return base_; }
  std::span<const Jump> jumps() const { return jumps_; }
  bool empty() const { return jumps_.empty(); }

  /// base + increments at times < t (Left) or <= t (Right).
  double eval(double t, Side side = Side::Right) const;

  /// Value after the last jump.
  double total() const;

  /// The curve t -> max(0, f(t + tau) - offset). Jumps before tau fold into the
  /// base; a jump exactly at tau stays as a jump at 0.
  Staircase shift_rescale(double tau, double offset) const;

  friend bool operator==(const Staircase&, const Staircase&) = default;

 private:
  double base_ = 0.0;
  std::vector<Jump> jumps_;
};

/// Minimum departure for per-packet deadlines: packet k is due at d_k + theta_k.
Staircase qos_deadline(std::span<const Jump> packets, std::span<const double> theta);

/// Minimum departure for a transmit queue of `beta` bits: max(0, D_A(t) - beta).
Staircase qos_buffer(const Staircase& arrivals, double beta);

}  // namespace ehs
