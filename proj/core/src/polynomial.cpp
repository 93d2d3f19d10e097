#include "isobary/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace isobary {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
  check_degree();
}

Polynomial::Polynomial(std::initializer_list<Rational> coefficients)
    : Polynomial(std::vector<Rational>(coefficients)) {}

Polynomial Polynomial::constant(const Rational& value) { return Polynomial({value}); }

Polynomial Polynomial::affine(const Rational& a, const Rational& b) { return Polynomial({b, a}); }

Rational Polynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational Polynomial::operator()(const Rational& x) const {
  if (coeffs_.empty()) {
    return Rational(0);
  }
  // Homogeneous Horner over integers: with x = a/b, sum c_k a^k b^(d-k) / b^d.
  // One canonicalisation at the end instead of one per step.
  const mpz_class& a = x.raw().get_num();
  const mpz_class& b = x.raw().get_den();
  const std::size_t d = coeffs_.size() - 1;
  mpz_class common = 1;
  for (const auto& c : coeffs_) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.raw().get_den_mpz_t());
  }
  mpz_class acc = 0;
  mpz_class bpow = 1;
  mpz_class term;
  // acc = sum_k (c_k * common) a^k b^(d-k), accumulated from the top down.
  for (std::size_t i = 0; i <= d; ++i) {
    const std::size_t k = d - i;
    const mpq_class& c = coeffs_[k].raw();
    acc *= a;
    term = common / c.get_den();
    term *= c.get_num();
    term *= bpow;
    acc += term;
    bpow *= b;
  }
  // bpow == b^(d+1) now; the value is acc / (common * b^d).
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(d));
  den *= common;
  return Rational(acc, den);
}

long double Polynomial::evaluate_float(long double x) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + it->to_long_double();
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) {
    return {};
  }
  std::vector<Rational> out;
  out.reserve(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] * Rational(static_cast<std::int64_t>(k)));
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) {
    return {};
  }
  std::vector<Rational> out;
  out.reserve(coeffs_.size() + 1);
  out.emplace_back(0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] / Rational(static_cast<std::int64_t>(k + 1)));
  }
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) {
    coeffs_.resize(rhs.coeffs_.size());
  }
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
    coeffs_[k] += rhs.coeffs_[k];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) {
    coeffs_.resize(rhs.coeffs_.size());
  }
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
    coeffs_[k] -= rhs.coeffs_[k];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scale) {
  for (auto& c : coeffs_) {
    c *= scale;
  }
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) {
    return {};
  }
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

std::string Polynomial::str() const {
  if (coeffs_.empty()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) {
      continue;
    }
    if (!first) {
      os << " + ";
    }
    first = false;
    os << "(" << coeffs_[k] << ")";
    if (k == 1) {
      os << "*x";
    } else if (k > 1) {
      os << "*x^" << k;
    }
  }
  return os.str();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) {
    coeffs_.pop_back();
  }
}

void Polynomial::check_degree() const {
  if (degree() > kMaxPolynomialDegree) {
    throw std::length_error("Polynomial: degree " + std::to_string(degree()) +
                            " exceeds cap " + std::to_string(kMaxPolynomialDegree));
  }
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
  Polynomial result = Polynomial::constant(Rational(1));
  Polynomial sq = base;
  while (exponent > 0) {
    if (exponent & 1U) {
      result = result * sq;
    }
    exponent >>= 1U;
    if (exponent > 0) {
      sq = sq * sq;
    }
  }
  return result;
}

}  // namespace isobary
