#pragma once

#include "isobary/errors.hpp"
#include "isobary/irwin_hall.hpp"
#include "isobary/rational.hpp"

#include <optional>
#include <span>

namespace isobary {

/// Parameters of the five-region bound on D(t) = (m - t) m / (1 - m^2).
///
/// The regions split (-1, 1) at -alpha/sqrt(3n), 0, beta/sqrt(3n) and gamma:
///   1: (-1, -alpha/sqrt(3n)]        needs alpha > sqrt(2)
///   2: (-alpha/sqrt(3n), 0]
///   3: (0, beta/sqrt(3n))            needs beta < sqrt(3n) - 1
///   4: [beta/sqrt(3n), gamma)        needs 16/beta^2 < (4 + 3 gamma^2)(1 - gamma^2)
///   5: [gamma, 1)                    needs a positive denominator in h5
/// Common requirements: alpha, beta in (0, sqrt(3n)], gamma in (0, 1].
struct RegionParams {
  double alpha = 2.0;
  double beta = 3.0;
  double gamma = 0.5;
  int n = 12;
};

enum class Region { k1 = 1, k2, k3, k4, k5 };

/// The bound h_i for region `which`. Throws DomainError naming the failed
/// precondition.
double lemma_bound(Region which, const RegionParams& p);

/// Region of t under p (float comparison against the irrational boundaries).
Region region_of(double t, const RegionParams& p);

/// Exact forms of the algebraic bounds at rational parameters.
Rational h2_exact(const Rational& alpha, int n);                        // (1+a)/(3n-1)
Rational h3_exact(const Rational& beta, int n);                         // (1+b)/(3n-(1+b)^2)
Rational h4_exact(const Rational& beta, const Rational& gamma, int n);

/// 3/(2n - 15), for n >= 12.
double combined_bound(int n);
Rational combined_bound_exact(int n);

/// t (1 + tau / (n - (n+1) tau)) with tau = p(t)^(1/n): an upper bound for
/// m(t). Needs 0 < t < 1 and tau < n/(n+1).
double concave_mean_bound(const IrwinHallTail& d, const Rational& t);

/// t^2 / ((1/tau - 1)(1 - t^2) n - 2): an upper bound for D(t). Needs
/// 0 < t < 1 and 1/tau > 1 + 2/((1 - t^2) n).
double concave_derived_bound(const IrwinHallTail& d, const Rational& t);

/// Envelopes for the tail and truncated mean at (n, t). A field is empty
/// when t is outside that envelope's domain.
struct TailEnvelopes {
  std::optional<double> small_exact;    // (n(1-t)/2)^n / n!,   t < 1
  std::optional<double> small_exact_e;  // (e(1-t)/2)^n,        t < 1
  std::optional<double> chernoff;       // exp(-3 n t^2 / 2),   0 < t <= 1
  std::optional<double> variance;       // t + 1/sqrt(3n),      0 <= t < 1
  std::optional<double> half;           // (1 + t)/2,           -1 <= t <= 1
};

TailEnvelopes envelope_bounds(int n, double t);

/// Exact (n(1-t)/2)^n / n!; equals p(t) on [1 - 1/n, 1].
Rational small_exact_exact(int n, const Rational& t);

/// (e^mu - e^-mu)/(2 mu) and its bound exp(mu^2/6), for mu > 0.
struct MgfPair {
  double mgf;
  double bound;
};
MgfPair mgf_bound(double mu);

/// Volume bounds for a subset of [-1,1]^n with barycenter x (x in the open
/// cube).
struct CubePointBounds {
  double hp;             // 2^n prod sqrt(1 - x_i^2)
  double greentree;      // e^n prod (1 - |x_i|)
  double greentree_sharp;  // ((n+1)^n / n!) prod (1 - |x_i|)
  double milman_pajor;   // 4^n prod (1 - |x_i|)
};

CubePointBounds cube_point_bounds(std::span<const double> x);

/// Volume bounds for a subset of the simplex {x >= 0, sum x <= 1} with
/// barycenter x in its interior.
struct SimplexPointBounds {
  double isobarycentric;  // ((n+1)^n/n!) [(1 - sum x) prod x]^(n/(n+1))
  double stronger;        // ((n+1)^n/n!) (1 - sum x) prod x / max(x_1..x_n, 1 - sum x)
};

SimplexPointBounds simplex_point_bounds(std::span<const double> x);

/// n / (n!)^(1/n), the normalised volume ratio of the corner simplices.
double greentree_ratio(int n);

}  // namespace isobary
