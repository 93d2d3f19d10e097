#include "isobary/irwin_hall.hpp"
#include "isobary/piecewise.hpp"
#include "isobary/polynomial.hpp"
#include "isobary/rational.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>

namespace isobary {
namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

TEST(Rational, LowestTermsAndSign) {
  const Rational r(6, -8);
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(q(4, 2).str(), "2");
  EXPECT_TRUE(q(4, 2).is_integer());
}

TEST(Rational, ArithmeticIsExact) {
  EXPECT_EQ(q(1, 3) + q(1, 6), q(1, 2));
  EXPECT_EQ(q(1, 3) * q(3, 7), q(1, 7));
  EXPECT_EQ(q(1, 3) - q(1, 2), q(-1, 6));
  EXPECT_EQ(q(2, 3) / q(4, 9), q(3, 2));
  EXPECT_EQ(pow(q(2, 3), 3), q(8, 27));
  EXPECT_EQ(-q(1, 2), q(-1, 2));
  EXPECT_LT(q(1, 3), q(1, 2));
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(q(1) / q(0), std::domain_error);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ParseFractionsAndDecimalsExactly) {
  EXPECT_EQ(Rational::parse("3"), q(3));
  EXPECT_EQ(Rational::parse("-1/2"), q(-1, 2));
  EXPECT_EQ(Rational::parse("-0.125"), q(-1, 8));
  EXPECT_EQ(Rational::parse("0.1"), q(1, 10));
  EXPECT_EQ(Rational::parse("2/4"), q(1, 2));
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, DoubleConversions) {
  EXPECT_EQ(Rational::from_double(0.375), q(3, 8));
  EXPECT_EQ(Rational::from_double(-0.9).to_double(), -0.9);
  EXPECT_EQ(q(1, 10).to_double(), 0.1);
  EXPECT_EQ(q(-9, 10).to_double(), -0.9);
  EXPECT_EQ(q(2, 3).to_double(), 2.0 / 3.0);
  EXPECT_EQ(q(1, 3).to_long_double(), 1.0L / 3.0L);
}

TEST(Rational, SimplestBetween) {
  EXPECT_EQ(simplest_between(Rational::parse("0.33"), Rational::parse("0.34")), q(1, 3));
  EXPECT_EQ(simplest_between(q(1, 4), q(3, 4)), q(1, 2));
  EXPECT_EQ(simplest_between(q(-3, 4), q(-1, 4)), q(-1, 2));
  EXPECT_EQ(simplest_between(q(-1, 4), q(1, 4)), q(0));
  EXPECT_EQ(simplest_between(q(5, 7), q(5, 7)), q(5, 7));
}

TEST(Rational, StreamsAsFraction) {
  std::ostringstream os;
  os << q(-7, 3);
  EXPECT_EQ(os.str(), "-7/3");
}

TEST(Polynomial, EvaluateAndCalculus) {
  const Polynomial p{q(1), q(-2), q(3)};  // 1 - 2x + 3x^2
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(q(1, 2)), q(3, 4));
  EXPECT_EQ(p.derivative(), (Polynomial{q(-2), q(6)}));
  EXPECT_EQ(p.antiderivative().derivative(), p);
  EXPECT_EQ(p.antiderivative()(q(0)), q(0));
  EXPECT_NEAR(static_cast<double>(p.evaluate_float(0.5L)), 0.75, 1e-18);
}

TEST(Polynomial, TrimAndProduct) {
  const Polynomial z{q(0), q(0)};
  EXPECT_TRUE(z.is_zero());
  const Polynomial a = Polynomial::affine(q(1), q(1));  // x + 1
  EXPECT_EQ(a * a, (Polynomial{q(1), q(2), q(1)}));
  EXPECT_EQ(pow(a, 3)(q(1)), q(8));
  EXPECT_EQ((a - a).degree(), -1);
}

TEST(Polynomial, DegreeCapEnforced) {
  const Polynomial x = Polynomial::affine(q(1), q(0));
  EXPECT_NO_THROW(pow(x, kMaxPolynomialDegree));
  EXPECT_THROW(pow(x, kMaxPolynomialDegree + 1), std::length_error);
}

PiecewisePoly n2_tail() { return IrwinHallTail::build(2).tail(); }

TEST(PiecewisePoly, ConstantFunction) {
  const auto one = PiecewisePoly::constant(q(1));
  EXPECT_EQ(one(q(1, 3)), q(1));
  EXPECT_EQ(one.integrate_tail(q(-1)), q(2));
  const auto d = one.differentiate();
  EXPECT_EQ(d(q(0)), q(0));
  EXPECT_EQ(d(q(1, 2)), q(0));
}

TEST(PiecewisePoly, UniformAndTriangularTails) {
  const auto t1 = IrwinHallTail::build(1).tail();
  EXPECT_EQ(t1(q(0)), q(1, 2));
  EXPECT_EQ(t1.integrate_tail(q(-1)), q(1));
  EXPECT_EQ(t1.differentiate()(q(1, 3)), q(-1, 2));

  const auto t2 = n2_tail();
  EXPECT_EQ(t2(q(1, 2)), q(1, 8));
  EXPECT_EQ(t2.integrate_tail(q(1, 2)), q(1, 48));
  EXPECT_EQ(t2.differentiate()(q(1, 2)), q(-1, 2));  // -(1 - t)
  EXPECT_EQ(t2.differentiate()(q(1, 4)), q(-3, 4));
}

TEST(PiecewisePoly, RightPieceConventionAndDomain) {
  // Density of n = 2 is a tent; its derivative jumps at 0.
  const auto dens = IrwinHallTail::build(2).density();
  const auto slope = dens.differentiate();
  EXPECT_EQ(slope(q(0)), q(-1));
  EXPECT_EQ(slope(q(-1, 2)), q(1));
  EXPECT_EQ(slope(q(1)), q(-1));
  EXPECT_TRUE(dens.is_breakpoint(q(0)));
  EXPECT_FALSE(dens.is_breakpoint(q(1, 3)));
  EXPECT_THROW(dens(q(3, 2)), OutOfDomain);
  EXPECT_THROW(dens(q(-2)), DomainError);
}

TEST(PiecewisePoly, ConstructionChecks) {
  const Polynomial one = Polynomial::constant(q(1));
  EXPECT_THROW(PiecewisePoly({q(0), q(1)}, {one}), std::invalid_argument);
  EXPECT_THROW(PiecewisePoly({q(-1), q(1), q(1)}, {one, one}), std::invalid_argument);
  EXPECT_THROW(PiecewisePoly({q(-1), q(0), q(1)}, {one}), std::invalid_argument);
  const Polynomial two = Polynomial::constant(q(2));
  EXPECT_THROW(PiecewisePoly({q(-1), q(0), q(1)}, {one, two}), std::invalid_argument);
  EXPECT_NO_THROW(PiecewisePoly({q(-1), q(0), q(1)}, {one, two},
                                PiecewisePoly::Continuity::kAllowJumps));
}

TEST(PiecewisePoly, AntiderivativeRoundTrip) {
  for (int n = 1; n <= 6; ++n) {
    const auto f = IrwinHallTail::build(n).tail();
    const auto back = f.antiderivative().differentiate();
    for (int k = 1; k < 64; k += 2) {
      const Rational t = q(-1) + q(k, 32);
      if (f.is_breakpoint(t)) continue;
      EXPECT_EQ(back(t), f(t)) << "n=" << n << " t=" << t;
    }
    EXPECT_EQ(f.integrate_tail(q(1)), q(0));
    EXPECT_EQ(f.antiderivative()(q(-1)), q(0));
  }
}

TEST(PiecewisePoly, TailIntegralDecreasingForNonnegative) {
  const auto f = IrwinHallTail::build(4).tail();
  Rational prev = f.integrate_tail(q(-1));
  for (int k = 1; k <= 64; ++k) {
    const Rational cur = f.integrate_tail(q(-1) + q(k, 32));
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

}  // namespace
}  // namespace isobary
