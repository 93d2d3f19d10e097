#include "isobary/halfspace_solver.hpp"
#include "isobary/irwin_hall.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace isobary {
namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

TEST(Solver, OneDimensional) {
  SolveResult r = solve(std::vector<double>{0.75});
  EXPECT_DOUBLE_EQ(r.halfspace.direction[0], 1.0);
  EXPECT_DOUBLE_EQ(r.halfspace.offset, 0.5);
  r = solve(std::vector<double>{-0.4});
  EXPECT_DOUBLE_EQ(r.halfspace.direction[0], -1.0);
  EXPECT_NEAR(r.halfspace.offset, -0.2, 1e-15);
  EXPECT_LT(r.residual, 1e-15);
}

TEST(Solver, DiagonalExamples) {
  const double r2 = 1 / std::sqrt(2.0);
  SolveResult r = solve(std::vector<double>{1.0 / 3, 1.0 / 3});
  EXPECT_NEAR(r.halfspace.direction[0], r2, 1e-8);
  EXPECT_NEAR(r.halfspace.direction[1], r2, 1e-8);
  EXPECT_NEAR(r.halfspace.offset, 0.0, 1e-8);
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_TRUE(r.multistart_agreement);

  r = solve(std::vector<double>{5.0 / 6, 5.0 / 6});
  EXPECT_NEAR(r.halfspace.offset, 0.75 * 2 / std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(slice_stats(r.halfspace).volume_fraction, 1.0 / 32, 1e-9);
}

TEST(Solver, DiagonalTargetsRecoverTheDiagonal) {
  for (int n = 2; n <= 5; ++n) {
    for (double m : {-0.6, -0.1, 0.2, 0.45, 0.7}) {
      const SolveResult r = solve(std::vector<double>(static_cast<std::size_t>(n), m));
      const double e = (m > 0 ? 1 : -1) / std::sqrt(static_cast<double>(n));
      for (double v : r.halfspace.direction) EXPECT_NEAR(v, e, 1e-8) << n << " " << m;
      EXPECT_TRUE(r.multistart_agreement) << n << " " << m;
      EXPECT_LT(r.multistart_spread, 1e-8);
    }
  }
}

TEST(Solver, RoundTripRandomTargets) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.85, 0.85);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = u(rng);
    const SolveResult r = solve(x);
    EXPECT_LT(r.residual, 1e-10) << trial;
    EXPECT_LT(distance(slice_stats(r.halfspace).barycenter, x), 1e-10) << trial;
    EXPECT_TRUE(r.multistart_agreement) << trial;
    double norm = 0;
    for (double v : r.halfspace.direction) norm += v * v;
    EXPECT_NEAR(norm, 1.0, 1e-14);
  }
}

TEST(Solver, ZeroCoordinatesGetZeroNormal) {
  const std::vector<double> x{0.3, 0.0, -0.2};
  const SolveResult r = solve(x);
  EXPECT_EQ(r.halfspace.direction[1], 0.0);
  EXPECT_GT(r.halfspace.direction[0], 0.0);
  EXPECT_LT(r.halfspace.direction[2], 0.0);
  EXPECT_LT(r.residual, 1e-10);
}

TEST(Solver, Errors) {
  EXPECT_THROW(solve(std::vector<double>{0.0, 0.0}), DomainError);
  EXPECT_THROW(solve(std::vector<double>{1.0, 0.2}), DomainError);
  EXPECT_THROW(solve(std::vector<double>{}), DomainError);
  EXPECT_THROW(solve(std::vector<double>(13, 0.1)), DomainError);
  SolveOptions starved;
  starved.max_iterations = 0;
  starved.multistart = false;
  EXPECT_THROW(solve(std::vector<double>{0.7, -0.1, 0.3}, starved), NonConvergence);
}

// A box centred at x has barycenter x, so its volume may not exceed that of
// the halfspace slice with the same barycenter; nor may a pair of equal
// boxes placed symmetrically about x.
TEST(Solver, SliceBeatsBoxesWithTheSameBarycenter) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = u(rng);
    const SolveResult r = solve(x);
    const double slice = std::ldexp(slice_stats(r.halfspace).volume_fraction, n);
    double box = 1;
    double pair = 2;
    for (int i = 0; i < n; ++i) {
      const double room = 1 - std::fabs(x[i]);
      box *= 2 * room;
      // Two boxes split along coordinate 0, each of half-width room/2 there.
      pair *= i == 0 ? room : 2 * room;
    }
    EXPECT_LE(box, slice) << trial;
    EXPECT_LE(pair, slice) << trial;
  }
}

TEST(SolveDiagonal, Examples) {
  DiagonalSolution s = solve_diagonal(1, q(3, 4));
  EXPECT_EQ(s.t, q(1, 2));
  EXPECT_TRUE(s.exact);
  EXPECT_FALSE(s.lower);
  s = solve_diagonal(2, q(1, 3));
  EXPECT_EQ(s.t, q(0));
  EXPECT_TRUE(s.exact);
  s = solve_diagonal(2, q(5, 6));
  EXPECT_EQ(s.t, q(3, 4));
  s = solve_diagonal(2, q(-1, 3));
  EXPECT_EQ(s.t, q(0));
  EXPECT_TRUE(s.lower);
  s = solve_diagonal(3, q(-1, 2));
  EXPECT_TRUE(s.lower);
  EXPECT_EQ(truncated_mean(IrwinHallTail::build(3), -s.t), q(1, 2)) << s.t;
}

TEST(SolveDiagonal, RoundTrip) {
  for (int n = 1; n <= 10; ++n) {
    const auto& d = shared_irwin_hall(n);
    for (int k = 1; k < 20; ++k) {
      const Rational m(k, 20);
      const DiagonalSolution s = solve_diagonal(n, m);
      const Rational back = truncated_mean(d, s.t);
      if (s.exact) {
        EXPECT_EQ(back, m) << n << " " << m;
      } else {
        EXPECT_LT(std::fabs((back - m).to_double()), 1e-14) << n << " " << m;
      }
    }
  }
}

TEST(SolveDiagonal, Errors) {
  EXPECT_THROW(solve_diagonal(3, q(0)), DomainError);
  EXPECT_THROW(solve_diagonal(3, q(1)), DomainError);
  EXPECT_THROW(solve_diagonal(3, q(-3, 2)), DomainError);
  EXPECT_THROW(solve_diagonal(kMaxExactN + 1, q(1, 2)), DomainError);
}

}  // namespace
}  // namespace isobary
