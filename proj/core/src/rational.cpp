#include "isobary/rational.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace isobary {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char ch : s) {
    if (ch < '0' || ch > '9') {
      return false;
    }
  }
  return true;
}

mpz_class parse_integer(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) {
    throw std::domain_error("Rational: zero denominator");
  }
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::domain_error("Rational::from_double: non-finite value");
  }
  return Rational(mpq_class(value));
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational literal: " + std::string(text));
    }
    const mpz_class d = parse_integer(den);
    if (d == 0) {
      throw std::invalid_argument("zero denominator in: " + std::string(text));
    }
    out = Rational(parse_integer(num), d);
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto whole = s.substr(0, dot);
    const auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed decimal literal: " + std::string(text));
    }
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const mpz_class w = whole.empty() ? mpz_class(0) : parse_integer(whole);
    const mpz_class f = frac.empty() ? mpz_class(0) : parse_integer(frac);
    out = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) {
      throw std::invalid_argument("malformed rational literal: " + std::string(text));
    }
    out = Rational(parse_integer(s), mpz_class(1));
  }
  return negative ? -out : out;
}

double Rational::to_double() const {
  // get_d truncates toward zero; step one ulp away when that is closer.
  const double d = value_.get_d();
  if (is_zero() || !std::isfinite(d)) {
    return d;
  }
  const double away = std::nextafter(d, sign() > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) {
    return d;
  }
  const int c = cmp(abs(*this - from_double(d)).raw(), abs(from_double(away) - *this).raw());
  if (c > 0 || (c == 0 && (std::bit_cast<std::uint64_t>(away) & 1U) == 0)) {
    return away;
  }
  return d;
}

long double Rational::to_long_double() const {
  if (is_zero()) {
    return 0.0L;
  }
  mpf_class num(value_.get_num(), 128);
  mpf_class den(value_.get_den(), 128);
  mpf_class q(0, 128);
  q = num / den;
  // Split into a double head and a double tail to recover 64 mantissa bits.
  long exp = 0;
  const double head = mpf_get_d_2exp(&exp, q.get_mpf_t());
  mpf_class rest(0, 128);
  mpf_class head_f(head, 128);
  if (exp >= 0) {
    mpf_mul_2exp(head_f.get_mpf_t(), head_f.get_mpf_t(), static_cast<unsigned long>(exp));
  } else {
    mpf_div_2exp(head_f.get_mpf_t(), head_f.get_mpf_t(), static_cast<unsigned long>(-exp));
  }
  rest = q - head_f;
  const long double tail = static_cast<long double>(rest.get_d());
  return std::ldexp(static_cast<long double>(head), static_cast<int>(exp)) + tail;
}

std::string Rational::str() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw std::domain_error("Rational: division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  // Powers of a reduced fraction stay reduced.
  mpq_class out;
  out.get_num() = num;
  out.get_den() = den;
  return Rational(std::move(out));
}

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

Rational positive_part(const Rational& value) {
  return value.sign() > 0 ? value : Rational(0);
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  if (hi_in < lo_in) {
    return simplest_between(hi_in, lo_in);
  }
  if (lo_in.sign() <= 0 && hi_in.sign() >= 0) {
    return Rational(0);
  }
  if (hi_in.sign() < 0) {
    return -simplest_between(-hi_in, -lo_in);
  }
  // Stern-Brocot descent via continued fractions, 0 < lo <= hi.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpq_class lo = lo_in.raw();
  mpq_class hi = hi_in.raw();
  while (true) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpq_class flq(fl);
    if (lo == flq) {
      // lo is an integer: it is the simplest candidate at this level.
      return Rational(fl * p1 + p0, fl * q1 + q0);
    }
    mpz_class fl_hi;
    mpz_fdiv_q(fl_hi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (fl_hi > fl) {
      const mpz_class a = fl + 1;
      return Rational(a * p1 + p0, a * q1 + q0);
    }
    // Same integer part: recurse on reciprocals of fractional parts (order flips).
    const mpz_class a = fl;
    mpz_class np = a * p1 + p0;
    mpz_class nq = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = np;
    q1 = nq;
    mpq_class new_lo = 1 / (hi - flq);
    mpq_class new_hi = 1 / (lo - flq);
    lo = new_lo;
    hi = new_hi;
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace isobary
