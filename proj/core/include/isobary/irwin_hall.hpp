#pragma once

#include "isobary/errors.hpp"
#include "isobary/piecewise.hpp"
#include "isobary/rational.hpp"

namespace isobary {

/// Largest n handled by the exact rational path.
inline constexpr int kMaxExactN = 40;
/// Largest n handled by the floating-point path.
inline constexpr int kMaxFloatN = 200;

/// Distribution of X = (1/n) * sum of n independent uniforms on [-1, 1].
///
/// Holds the tail p(t) = P(X > t), its tail integral I(t) = int_t^1 p and the
/// density -p'(t) as exact piecewise polynomials with breakpoints at
/// t = -1 + 2k/n. Immutable after build(); safe to share across threads.
class IrwinHallTail {
 public:
  /// Throws DomainError unless 1 <= n <= kMaxExactN.
  static IrwinHallTail build(int n);

  int n() const noexcept { return n_; }
  const PiecewisePoly& tail() const noexcept { return tail_; }
  const PiecewisePoly& tail_integral() const noexcept { return tail_integral_; }
  const PiecewisePoly& density() const noexcept { return density_; }

  Rational tail_at(const Rational& t) const { return tail_.evaluate(t); }
  Rational tail_integral_at(const Rational& t) const { return tail_integral_.evaluate(t); }
  /// p'(t), right-hand derivative at breakpoints.
  Rational tail_derivative_at(const Rational& t) const { return -density_.evaluate(t); }

 private:
  IrwinHallTail(int n, PiecewisePoly tail, PiecewisePoly tail_integral, PiecewisePoly density);

  int n_;
  PiecewisePoly tail_;
  PiecewisePoly tail_integral_;
  PiecewisePoly density_;
};

/// Process-wide cached instance for n, built once on first use (thread-safe).
const IrwinHallTail& shared_irwin_hall(int n);

/// m(t) = E[X | X > t] = t + I(t) / p(t). Requires -1 <= t < 1.
Rational truncated_mean(const IrwinHallTail& d, const Rational& t);

/// m'(t) from the quotient rule on the exact pieces of I and p.
/// Requires -1 < t < 1; at a breakpoint the right-hand pieces are used.
Rational truncated_mean_derivative(const IrwinHallTail& d, const Rational& t);

/// D(t) = (m(t) - t) * m(t) / (1 - m(t)^2). Requires -1 <= t < 1.
Rational derived_quantity(const IrwinHallTail& d, const Rational& t);

/// f(t) = (1/n) ln p(t) - (1/2) ln(1 - m(t)^2), from exact values rounded
/// only at the last step. Negative exactly when p^(1/n) < sqrt(1 - m^2).
/// Requires -1 < t < 1.
double diag_gap(const IrwinHallTail& d, const Rational& t);
double diag_gap(const IrwinHallTail& d, double t);

/// x^(1/n) for x >= 0: std::pow estimate plus one Newton step.
double nth_root(double x, int n);

/// Floating-point evaluation of the same quantities for n <= kMaxFloatN.
///
/// Uses the positive-weight recurrence for the Irwin-Hall CDF and evaluates
/// on whichever side of the mean keeps the small probability explicit, so
/// there is no cancellation near t = -1 or t = 1.
struct FloatTail {
  long double tail = 0;           // p(t)
  long double complement = 0;     // 1 - p(t)
  long double tail_integral = 0;  // I(t)
  long double truncated_mean = 0; // m(t)
};

/// Requires 1 <= n <= kMaxFloatN and -1 <= t < 1.
FloatTail irwin_hall_float(int n, double t);
double derived_quantity_float(int n, double t);
double diag_gap_float(int n, double t);

/// CDF of a sum of n independent uniforms on [0, 1], evaluated at s.
long double irwin_hall_cdf(int n, long double s);

}  // namespace isobary
