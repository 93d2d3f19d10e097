#include "isobary/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace isobary {

namespace {

constexpr double kE = std::numbers::e;

void check_common(const RegionParams& p) {
  if (p.n < 1) {
    throw DomainError("n >= 1");
  }
  const double root = std::sqrt(3.0 * p.n);
  if (!(p.alpha > 0 && p.alpha <= root)) {
    throw DomainError("0 < alpha <= sqrt(3n)");
  }
  if (!(p.beta > 0 && p.beta <= root)) {
    throw DomainError("0 < beta <= sqrt(3n)");
  }
  if (!(p.gamma > 0 && p.gamma <= 1)) {
    throw DomainError("0 < gamma <= 1");
  }
}

double h1(double a, int n) {
  if (!(a > std::numbers::sqrt2)) {
    throw DomainError("alpha > sqrt(2)");
  }
  const double a2 = a * a;
  return std::pow(a, 6) / ((a2 - 2) * (a2 - 2) * std::expm1(a2 / 2)) / (3.0 * n - 1);
}

double h2(double a, int n) { return (1 + a) / (3.0 * n - 1); }

double h3(double b, int n) {
  if (!(b < std::sqrt(3.0 * n) - 1)) {
    throw DomainError("beta < sqrt(3n) - 1");
  }
  return (1 + b) / (3.0 * n - (1 + b) * (1 + b));
}

double h4(double b, double g, int n) {
  const double g2 = g * g;
  const double slack = (4 + 3 * g2) * (1 - g2) - 16 / (b * b);
  if (!(slack > 0)) {
    throw DomainError("16/beta^2 < (4 + 3 gamma^2)(1 - gamma^2)");
  }
  return (8.0 / 3.0) / (slack * n);
}

double h5(double g, int n) {
  const double g2 = g * g;
  const double den = ((1 + 2 / kE) - (1 - 2 / kE) / g2) * n - 2 / g2;
  if (!(den > 0)) {
    throw DomainError("((1 + 2/e) - (1 - 2/e)/gamma^2) n > 2/gamma^2");
  }
  return 1 / den;
}

}  // namespace

double lemma_bound(Region which, const RegionParams& p) {
  check_common(p);
  switch (which) {
    case Region::k1:
      return h1(p.alpha, p.n);
    case Region::k2:
      return h2(p.alpha, p.n);
    case Region::k3:
      return h3(p.beta, p.n);
    case Region::k4:
      return h4(p.beta, p.gamma, p.n);
    case Region::k5:
      return h5(p.gamma, p.n);
  }
  throw DomainError("region index 1..5");
}

Region region_of(double t, const RegionParams& p) {
  const double root = std::sqrt(3.0 * p.n);
  if (t <= -p.alpha / root) return Region::k1;
  if (t <= 0) return Region::k2;
  if (t < p.beta / root) return Region::k3;
  if (t < p.gamma) return Region::k4;
  return Region::k5;
}

Rational h2_exact(const Rational& alpha, int n) {
  return (Rational(1) + alpha) / Rational(3 * n - 1);
}

Rational h3_exact(const Rational& beta, int n) {
  const Rational b1 = Rational(1) + beta;
  const Rational den = Rational(3 * n) - b1 * b1;
  if (den.sign() <= 0) {
    throw DomainError("3n > (1 + beta)^2");
  }
  return b1 / den;
}

Rational h4_exact(const Rational& beta, const Rational& gamma, int n) {
  const Rational g2 = gamma * gamma;
  const Rational slack =
      (Rational(4) + Rational(3) * g2) * (Rational(1) - g2) - Rational(16) / (beta * beta);
  if (slack.sign() <= 0) {
    throw DomainError("16/beta^2 < (4 + 3 gamma^2)(1 - gamma^2)");
  }
  return Rational(8, 3) / (slack * Rational(n));
}

double combined_bound(int n) {
  if (n < 12) {
    throw DomainError("combined bound needs n >= 12");
  }
  return 3.0 / (2.0 * n - 15);
}

Rational combined_bound_exact(int n) {
  if (n < 12) {
    throw DomainError("combined bound needs n >= 12");
  }
  return Rational(3, 2 * n - 15);
}

double concave_mean_bound(const IrwinHallTail& d, const Rational& t) {
  if (!(t.sign() > 0 && t < Rational(1))) {
    throw DomainError("0 < t < 1");
  }
  const int n = d.n();
  const double tau = nth_root(d.tail_at(t).to_double(), n);
  if (!(tau < static_cast<double>(n) / (n + 1))) {
    throw DomainError("p(t)^(1/n) < n/(n+1)");
  }
  return t.to_double() * (1 + tau / (n - (n + 1) * tau));
}

double concave_derived_bound(const IrwinHallTail& d, const Rational& t) {
  if (!(t.sign() > 0 && t < Rational(1))) {
    throw DomainError("0 < t < 1");
  }
  const int n = d.n();
  const double tv = t.to_double();
  const double tau = nth_root(d.tail_at(t).to_double(), n);
  const double one_minus_t2 = 1 - tv * tv;
  if (!(1 / tau > 1 + 2 / (one_minus_t2 * n))) {
    throw DomainError("1/p(t)^(1/n) > 1 + 2/((1 - t^2) n)");
  }
  return tv * tv / ((1 / tau - 1) * one_minus_t2 * n - 2);
}

TailEnvelopes envelope_bounds(int n, double t) {
  if (n < 1) {
    throw DomainError("n >= 1");
  }
  if (!(t >= -1 && t <= 1)) {
    throw DomainError("-1 <= t <= 1");
  }
  TailEnvelopes out;
  if (t < 1) {
    out.small_exact = std::exp(n * std::log(n * (1 - t) / 2) - std::lgamma(n + 1.0));
    out.small_exact_e = std::pow(kE * (1 - t) / 2, n);
  }
  if (t > 0) {
    out.chernoff = std::exp(-1.5 * n * t * t);
  }
  if (t >= 0 && t < 1) {
    out.variance = t + 1 / std::sqrt(3.0 * n);
  }
  out.half = (1 + t) / 2;
  return out;
}

Rational small_exact_exact(int n, const Rational& t) {
  if (n < 1) {
    throw DomainError("n >= 1");
  }
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  const Rational base = Rational(n) * (Rational(1) - t) / Rational(2);
  return pow(base, static_cast<unsigned>(n)) / Rational(fact, mpz_class(1));
}

MgfPair mgf_bound(double mu) {
  if (!(mu > 0)) {
    throw DomainError("mu > 0");
  }
  return MgfPair{std::sinh(mu) / mu, std::exp(mu * mu / 6)};
}

CubePointBounds cube_point_bounds(std::span<const double> x) {
  const auto n = static_cast<int>(x.size());
  if (n < 1) {
    throw DomainError("point must have dimension >= 1");
  }
  double sqrt_prod = 1;
  double lin_prod = 1;
  for (double xi : x) {
    if (!(xi > -1 && xi < 1)) {
      throw DomainError("point must lie in the open cube");
    }
    sqrt_prod *= std::sqrt(1 - xi * xi);
    lin_prod *= 1 - std::fabs(xi);
  }
  // (n+1)^n / n! = prod_{m=1}^n (1 + 1/m)^m
  double sharp = 1;
  for (int m = 1; m <= n; ++m) sharp *= std::pow(1 + 1.0 / m, m);
  CubePointBounds out{};
  out.hp = std::ldexp(sqrt_prod, n);
  out.greentree = std::pow(kE, n) * lin_prod;
  out.greentree_sharp = sharp * lin_prod;
  out.milman_pajor = std::ldexp(lin_prod, 2 * n);
  return out;
}

SimplexPointBounds simplex_point_bounds(std::span<const double> x) {
  const auto n = static_cast<int>(x.size());
  if (n < 1) {
    throw DomainError("point must have dimension >= 1");
  }
  double sum = 0;
  double prod = 1;
  double largest = 0;
  for (double xi : x) {
    if (!(xi > 0)) {
      throw DomainError("point must lie in the open simplex");
    }
    sum += xi;
    prod *= xi;
    largest = std::max(largest, xi);
  }
  const double rest = 1 - sum;
  if (!(rest > 0)) {
    throw DomainError("point must lie in the open simplex");
  }
  largest = std::max(largest, rest);
  double coeff = 1;
  for (int m = 1; m <= n; ++m) coeff *= std::pow(1 + 1.0 / m, m);
  SimplexPointBounds out{};
  out.isobarycentric = coeff * std::pow(rest * prod, static_cast<double>(n) / (n + 1));
  out.stronger = coeff * rest * prod / largest;
  return out;
}

double greentree_ratio(int n) {
  if (n < 1) {
    throw DomainError("n >= 1");
  }
  return n / std::exp(std::lgamma(n + 1.0) / n);
}

}  // namespace isobary
