#pragma once

#include "isobary/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace isobary {

/// Highest degree any Polynomial may reach.
inline constexpr int kMaxPolynomialDegree = 64;

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending degree. The zero polynomial has no coefficients; otherwise the
/// leading coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<Rational> coefficients);

  static Polynomial constant(const Rational& value);
  /// a*x + b
  static Polynomial affine(const Rational& a, const Rational& b);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  /// Coefficient of x^k, zero beyond the degree.
  Rational coefficient(std::size_t k) const;

  Rational operator()(const Rational& x) const;
  long double evaluate_float(long double x) const;

  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scale);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  std::string str() const;

 private:
  void trim();
  void check_degree() const;

  std::vector<Rational> coeffs_;
};

/// base^exponent, by repeated squaring.
Polynomial pow(const Polynomial& base, unsigned exponent);

}  // namespace isobary
