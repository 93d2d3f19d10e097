#include "isobary/irwin_hall.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace isobary {

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

void require_open_upper(const Rational& t) {
  if (t < Rational(-1) || t >= Rational(1)) {
    throw DomainError("truncated mean needs -1 <= t < 1, got t = " + t.str());
  }
}

void require_interior(const Rational& t) {
  if (t <= Rational(-1) || t >= Rational(1)) {
    throw DomainError("need -1 < t < 1, got t = " + t.str());
  }
}

// ln of an exact probability in (0, 1], accurate also when it is close to 1.
double log_probability(const Rational& p) {
  if (p > Rational(1, 2)) {
    return std::log1p(-(Rational(1) - p).to_double());
  }
  return std::log(p.to_double());
}

}  // namespace

IrwinHallTail::IrwinHallTail(int n, PiecewisePoly tail, PiecewisePoly tail_integral,
                             PiecewisePoly density)
    : n_(n),
      tail_(std::move(tail)),
      tail_integral_(std::move(tail_integral)),
      density_(std::move(density)) {}

IrwinHallTail IrwinHallTail::build(int n) {
  if (n < 1 || n > kMaxExactN) {
    throw DomainError("exact Irwin-Hall needs 1 <= n <= " + std::to_string(kMaxExactN) +
                      ", got n = " + std::to_string(n));
  }
  const auto un = static_cast<unsigned long>(n);
  const Rational half_n(n, 2);
  const Rational inv_fact(mpz_class(1), factorial(un));

  // With S = n(X+1)/2 on [0, n], P(S <= s) = (1/n!) sum_{j <= s} (-1)^j C(n,j) (s-j)^n.
  // On piece k (s in [k, k+1]) the sum runs over j = 0..k; s - j = (n/2) t + (n/2 - j).
  std::vector<Rational> breakpoints;
  std::vector<Polynomial> pieces;
  breakpoints.reserve(un + 1);
  pieces.reserve(un);
  Polynomial cdf;
  for (int k = 0; k < n; ++k) {
    breakpoints.emplace_back(Rational(2 * k, n) - Rational(1));
    Polynomial term = pow(Polynomial::affine(half_n, half_n - Rational(k)), un);
    term *= Rational(binomial(un, static_cast<unsigned long>(k)), mpz_class(1)) * inv_fact;
    if (k % 2 == 1) {
      cdf -= term;
    } else {
      cdf += term;
    }
    pieces.push_back(Polynomial::constant(Rational(1)) - cdf);
  }
  breakpoints.emplace_back(1);

  PiecewisePoly tail(breakpoints, std::move(pieces));
  PiecewisePoly integral = tail.tail_integral();
  const PiecewisePoly derivative = tail.differentiate();
  std::vector<Polynomial> density_pieces;
  density_pieces.reserve(derivative.piece_count());
  for (const auto& piece : derivative.pieces()) {
    density_pieces.push_back(piece * Rational(-1));
  }
  PiecewisePoly density(breakpoints, std::move(density_pieces),
                        PiecewisePoly::Continuity::kAllowJumps);
  return IrwinHallTail(n, std::move(tail), std::move(integral), std::move(density));
}

const IrwinHallTail& shared_irwin_hall(int n) {
  if (n < 1 || n > kMaxExactN) {
    throw DomainError("exact Irwin-Hall needs 1 <= n <= " + std::to_string(kMaxExactN) +
                      ", got n = " + std::to_string(n));
  }
  static std::array<std::once_flag, kMaxExactN + 1> flags;
  static std::array<std::unique_ptr<IrwinHallTail>, kMaxExactN + 1> cache;
  const auto i = static_cast<std::size_t>(n);
  std::call_once(flags[i], [&] { cache[i] = std::make_unique<IrwinHallTail>(IrwinHallTail::build(n)); });
  return *cache[i];
}

Rational truncated_mean(const IrwinHallTail& d, const Rational& t) {
  require_open_upper(t);
  return t + d.tail_integral_at(t) / d.tail_at(t);
}

Rational truncated_mean_derivative(const IrwinHallTail& d, const Rational& t) {
  require_interior(t);
  const std::size_t k = d.tail().piece_index(t);
  const Polynomial& p = d.tail().pieces()[k];
  const Polynomial& integral = d.tail_integral().pieces()[k];
  const Rational pv = p(t);
  const Rational iv = integral(t);
  const Rational dp = p.derivative()(t);
  const Rational di = integral.derivative()(t);
  return Rational(1) + (di * pv - iv * dp) / (pv * pv);
}

Rational derived_quantity(const IrwinHallTail& d, const Rational& t) {
  const Rational m = truncated_mean(d, t);
  return (m - t) * m / (Rational(1) - m * m);
}

double diag_gap(const IrwinHallTail& d, const Rational& t) {
  require_interior(t);
  const Rational p = d.tail_at(t);
  const Rational m = truncated_mean(d, t);
  return log_probability(p) / d.n() - 0.5 * std::log1p(-(m * m).to_double());
}

double diag_gap(const IrwinHallTail& d, double t) {
  return diag_gap(d, Rational::from_double(t));
}

double nth_root(double x, int n) {
  if (x < 0.0 || n < 1) {
    throw DomainError("nth_root needs x >= 0 and n >= 1");
  }
  if (x == 0.0 || n == 1) {
    return x;
  }
  const double y = std::pow(x, 1.0 / n);
  // Newton on g(y) = y^n - x, carried in extended precision.
  const long double yl = y;
  const long double yn1 = std::pow(yl, static_cast<long double>(n - 1));
  return static_cast<double>(yl - (yn1 * yl - static_cast<long double>(x)) / (n * yn1));
}

long double irwin_hall_cdf(int n, long double s) {
  if (n < 0) {
    throw DomainError("irwin_hall_cdf needs n >= 0");
  }
  if (s <= 0) {
    return n == 0 ? 1.0L : 0.0L;
  }
  if (s >= n) {
    return 1.0L;
  }
  // v[j] = F_m(s - j); F_m(x) = (x F_{m-1}(x) + (m - x) F_{m-1}(x - 1)) / m.
  std::vector<long double> v(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    v[static_cast<std::size_t>(j)] = (s - j) >= 0 ? 1.0L : 0.0L;
  }
  for (int m = 1; m <= n; ++m) {
    for (int j = 0; j <= n - m; ++j) {
      const long double x = s - j;
      auto& out = v[static_cast<std::size_t>(j)];
      if (x <= 0) {
        out = 0;
      } else if (x >= m) {
        out = 1;
      } else {
        out = (x * out + (m - x) * v[static_cast<std::size_t>(j) + 1]) / m;
      }
    }
  }
  return v[0];
}

namespace {

// F_n(s) and G_n(s) = int_0^s F_n = sum_{k>=0} F_{n+1}(s - k), from one sweep.
struct CdfAndIntegral {
  long double cdf = 0;
  long double integral = 0;
};

CdfAndIntegral cdf_and_integral(int n, long double s) {
  CdfAndIntegral out;
  if (s <= 0) {
    return out;
  }
  const int shifts = static_cast<int>(std::floor(s));
  const int len = n + 2 + shifts;
  std::vector<long double> v(static_cast<std::size_t>(len));
  for (int j = 0; j < len; ++j) {
    v[static_cast<std::size_t>(j)] = (s - j) >= 0 ? 1.0L : 0.0L;
  }
  for (int m = 1; m <= n + 1; ++m) {
    for (int j = 0; j + 1 < len; ++j) {
      const long double x = s - j;
      auto& cur = v[static_cast<std::size_t>(j)];
      if (x <= 0) {
        cur = 0;
      } else if (x >= m) {
        cur = 1;
      } else {
        cur = (x * cur + (m - x) * v[static_cast<std::size_t>(j) + 1]) / m;
      }
    }
    if (m == n) {
      out.cdf = v[0];
    }
  }
  for (int k = 0; k <= shifts; ++k) {
    out.integral += v[static_cast<std::size_t>(k)];
  }
  return out;
}

}  // namespace

FloatTail irwin_hall_float(int n, double t) {
  if (n < 1 || n > kMaxFloatN) {
    throw DomainError("float Irwin-Hall needs 1 <= n <= " + std::to_string(kMaxFloatN));
  }
  if (!(t >= -1.0 && t < 1.0)) {
    throw DomainError("float Irwin-Hall needs -1 <= t < 1");
  }
  const long double tl = t;
  const long double scale = 2.0L / n;
  FloatTail out;
  if (t <= 0.0) {
    // Lower tail is the small side: q = P(X <= t), int_{-1}^t q.
    const auto lo = cdf_and_integral(n, n * (1.0L + tl) / 2.0L);
    out.complement = lo.cdf;
    out.tail = 1.0L - lo.cdf;
    const long double lower_integral = scale * lo.integral;
    // E[X; X > t] = -E[X; X <= t] = -t q + int_{-1}^t q.
    const long double upper_first_moment = -tl * lo.cdf + lower_integral;
    out.truncated_mean = upper_first_moment / out.tail;
    out.tail_integral = out.tail * (out.truncated_mean - tl);
  } else {
    const auto hi = cdf_and_integral(n, n * (1.0L - tl) / 2.0L);
    out.tail = hi.cdf;
    out.complement = 1.0L - hi.cdf;
    out.tail_integral = scale * hi.integral;
    out.truncated_mean = tl + out.tail_integral / out.tail;
  }
  return out;
}

double derived_quantity_float(int n, double t) {
  const auto v = irwin_hall_float(n, t);
  const long double m = v.truncated_mean;
  return static_cast<double>((m - t) * m / (1.0L - m * m));
}

double diag_gap_float(int n, double t) {
  if (!(t > -1.0 && t < 1.0)) {
    throw DomainError("diag gap needs -1 < t < 1");
  }
  const auto v = irwin_hall_float(n, t);
  const long double log_p = v.tail > 0.5L ? std::log1p(-v.complement) : std::log(v.tail);
  const long double m = v.truncated_mean;
  return static_cast<double>(log_p / n - 0.5L * std::log1p(-m * m));
}

}  // namespace isobary
