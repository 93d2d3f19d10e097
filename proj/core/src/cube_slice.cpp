#include "isobary/cube_slice.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace isobary {

namespace {

// Neumaier summation for long double; plain accumulation for exact types.
template <class Num>
class Accumulator {
 public:
  void add(const Num& x) { total_ += x; }
  Num value() const { return total_; }

 private:
  Num total_{};
};

template <>
class Accumulator<long double> {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0;
  long double comp_ = 0;
};

inline Rational power(const Rational& x, unsigned k) { return pow(x, k); }
inline long double power(long double x, unsigned k) {
  long double out = 1;
  long double base = x;
  while (k > 0) {
    if (k & 1U) out *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return out;
}

inline bool positive(const Rational& x) { return x.sign() > 0; }
inline bool positive(long double x) { return x > 0; }

template <class Num>
Num from_int(std::int64_t v) {
  return Num(v);
}
template <>
long double from_int<long double>(std::int64_t v) {
  return static_cast<long double>(v);
}

template <class Num>
struct Subset {
  Num sum;
  std::uint32_t mask;
  bool odd;
};

// Subsets of the (positive) weights whose sum stays below s. Every other
// subset contributes (s - sum)_+ = 0 to all inclusion-exclusion sums.
template <class Num>
void collect_subsets(const std::vector<Num>& a, const Num& s, std::size_t i, const Num& sum,
                     std::uint32_t mask, bool odd, std::vector<Subset<Num>>& out) {
  if (i == a.size()) {
    out.push_back({sum, mask, odd});
    return;
  }
  collect_subsets(a, s, i + 1, sum, mask, odd, out);
  Num with = sum + a[i];
  if (positive(Num(s - with))) {
    collect_subsets(a, s, i + 1, with, mask | (1U << i), !odd, out);
  }
}

// Statistics of the lower set L = {y in [0,1]^d : sum a_i y_i <= s}, 0 < s.
template <class Num>
struct LowerSet {
  Num volume;                     // P(L)
  std::vector<Num> first_moment;  // E[y_j ; L]
  Num projected_moment;           // E[sum a_i y_i ; L]
};

template <class Num>
LowerSet<Num> lower_set(const std::vector<Num>& a, const Num& s, bool coordinates) {
  const auto d = static_cast<unsigned>(a.size());
  std::vector<Subset<Num>> subsets;
  collect_subsets<Num>(a, s, 0, Num{}, 0U, false, subsets);

  Num prod = from_int<Num>(1);
  for (const auto& w : a) prod *= w;
  Num fact_d = from_int<Num>(1);
  for (unsigned k = 2; k <= d; ++k) fact_d *= from_int<Num>(k);
  const Num fact_d1 = fact_d * from_int<Num>(d + 1);

  Accumulator<Num> vol;
  Accumulator<Num> second;
  for (const auto& sub : subsets) {
    const Num r = s - sub.sum;
    const Num rd = power(r, d);
    const Num rd1 = rd * r;
    if (sub.odd) {
      vol.add(Num(-rd));
      second.add(Num(-rd1));
    } else {
      vol.add(rd);
      second.add(rd1);
    }
  }
  LowerSet<Num> out;
  out.volume = vol.value() / (fact_d * prod);
  const Num g = second.value() / (fact_d1 * prod);
  // E[sum a y ; L] = s P(L) - int_0^s P(sum a y <= r) dr.
  out.projected_moment = s * out.volume - g;

  if (coordinates) {
    out.first_moment.resize(d);
    const Num dd = from_int<Num>(d);
    const Num dd1 = from_int<Num>(d + 1);
    for (unsigned j = 0; j < d; ++j) {
      Accumulator<Num> acc;
      const std::uint32_t bit = 1U << j;
      for (const auto& sub : subsets) {
        if (sub.mask & bit) continue;
        const Num r = s - sub.sum;
        Num term = power(r, d + 1);
        const Num rj = r - a[j];
        if (positive(rj)) {
          const Num rjd = power(rj, d);
          term -= dd1 * r * rjd;
          term += dd * rjd * rj;
        }
        acc.add(sub.odd ? Num(-term) : term);
      }
      out.first_moment[j] = acc.value() / (a[j] * fact_d1 * prod);
    }
  }
  return out;
}

// Folds signs into the weights and drops zero coordinates.
template <class Num>
struct Reduced {
  std::vector<Num> weights;
  std::vector<int> index;    // original coordinate of each weight
  std::vector<bool> flipped;  // original coefficient was negative
  Num total{};
  Num threshold{};  // slice is {sum weights_i y_i >= threshold}, y in [0,1]^d
};

template <class Num>
Reduced<Num> reduce(const std::vector<Num>& direction, const Num& offset) {
  Reduced<Num> out;
  for (std::size_t i = 0; i < direction.size(); ++i) {
    const Num& w = direction[i];
    if (w == Num{}) continue;
    const bool neg = !positive(w);
    out.weights.push_back(neg ? Num(-w) : w);
    out.index.push_back(static_cast<int>(i));
    out.flipped.push_back(neg);
    out.total += out.weights.back();
  }
  if (out.weights.empty()) {
    throw DomainError("halfspace direction must be nonzero");
  }
  // theta_i u_i = a_i (2 y_i - 1) after folding signs into y.
  out.threshold = (offset + out.total) / from_int<Num>(2);
  return out;
}

template <class Num>
struct SliceResult {
  Num volume;
  std::vector<Num> barycenter;
  Num projected;  // <theta, b> in the folded coordinates
};

template <class Num>
SliceResult<Num> slice_core(const std::vector<Num>& direction, const Num& offset,
                            bool coordinates) {
  const auto n = direction.size();
  const Reduced<Num> red = reduce(direction, offset);
  SliceResult<Num> out;
  out.barycenter.assign(n, Num{});
  const Num one = from_int<Num>(1);
  const Num two = from_int<Num>(2);
  const Num half = one / two;
  if (!positive(red.threshold)) {
    out.volume = one;
    out.projected = Num{};
    return out;
  }
  if (!positive(Num(red.total - red.threshold))) {
    throw EmptySlice("halfspace misses the open cube");
  }
  const std::size_t d = red.weights.size();
  std::vector<Num> folded(d);
  if (!positive(Num(two * red.threshold - red.total))) {
    // The slice is the larger side: subtract the lower set from the cube.
    const auto low = lower_set(red.weights, red.threshold, coordinates);
    out.volume = one - low.volume;
    const Num moment = red.total * half - low.projected_moment;
    out.projected = two * (moment / out.volume) - red.total;
    if (coordinates) {
      for (std::size_t j = 0; j < d; ++j) {
        const Num mean_y = (half - low.first_moment[j]) / out.volume;
        folded[j] = two * mean_y - one;
      }
    }
  } else {
    // Reflect y -> 1 - y: the slice becomes the lower set at total - threshold.
    const Num s = red.total - red.threshold;
    const auto low = lower_set(red.weights, s, coordinates);
    out.volume = low.volume;
    out.projected = red.total - two * (low.projected_moment / low.volume);
    if (coordinates) {
      for (std::size_t j = 0; j < d; ++j) {
        folded[j] = one - two * (low.first_moment[j] / low.volume);
      }
    }
  }
  if (coordinates) {
    for (std::size_t j = 0; j < d; ++j) {
      out.barycenter[static_cast<std::size_t>(red.index[j])] =
          red.flipped[j] ? Num(-folded[j]) : folded[j];
    }
  }
  return out;
}

void check_unit(const Halfspace& h) {
  long double norm2 = 0;
  for (double v : h.direction) norm2 += static_cast<long double>(v) * v;
  if (std::fabs(std::sqrt(norm2) - 1.0L) > 1e-14L) {
    throw DomainError("halfspace direction must have unit norm within 1e-14");
  }
}

void check_dimension(int n, int cap) {
  if (n < 1 || n > cap) {
    throw DomainError("slice dimension " + std::to_string(n) + " outside [1, " +
                      std::to_string(cap) + "]");
  }
}

std::vector<long double> widen(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

Halfspace normalized(std::vector<double> direction, double offset) {
  long double norm2 = 0;
  for (double v : direction) norm2 += static_cast<long double>(v) * v;
  if (norm2 == 0) {
    throw DomainError("halfspace direction must be nonzero");
  }
  const long double norm = std::sqrt(norm2);
  for (double& v : direction) v = static_cast<double>(v / norm);
  return Halfspace{std::move(direction), static_cast<double>(offset / norm)};
}

Halfspace normalized(const ExactHalfspace& h) {
  std::vector<double> dir;
  dir.reserve(h.direction.size());
  long double norm2 = 0;
  for (const auto& v : h.direction) {
    const long double x = v.to_long_double();
    norm2 += x * x;
  }
  if (norm2 == 0) {
    throw DomainError("halfspace direction must be nonzero");
  }
  const long double norm = std::sqrt(norm2);
  for (const auto& v : h.direction) dir.push_back(static_cast<double>(v.to_long_double() / norm));
  return Halfspace{std::move(dir), static_cast<double>(h.offset.to_long_double() / norm)};
}

SliceStats ExactSliceStats::to_float() const {
  SliceStats out;
  out.volume_fraction = volume_fraction.to_double();
  out.barycenter.reserve(barycenter.size());
  for (const auto& b : barycenter) out.barycenter.push_back(b.to_double());
  return out;
}

ExactSliceStats slice_stats(const ExactHalfspace& h) {
  check_dimension(h.dimension(), kMaxExactSliceDim);
  auto r = slice_core<Rational>(h.direction, h.offset, true);
  return ExactSliceStats{std::move(r.volume), std::move(r.barycenter)};
}

SliceStats slice_stats(const Halfspace& h) {
  check_unit(h);
  if (h.dimension() > kMaxExactSliceDim) {
    return slice_stats_float(h);
  }
  ExactHalfspace exact;
  exact.direction.reserve(h.direction.size());
  for (double v : h.direction) exact.direction.push_back(Rational::from_double(v));
  exact.offset = Rational::from_double(h.offset);
  return slice_stats(exact).to_float();
}

SliceStats slice_stats_float(const Halfspace& h) {
  check_dimension(h.dimension(), kMaxFloatSliceDim);
  auto r = slice_core<long double>(widen(h.direction), h.offset, true);
  SliceStats out;
  out.volume_fraction = static_cast<double>(r.volume);
  out.barycenter.reserve(r.barycenter.size());
  for (long double b : r.barycenter) out.barycenter.push_back(static_cast<double>(b));
  return out;
}

long double slice_volume_float(const Halfspace& h) {
  check_dimension(h.dimension(), kMaxFloatSliceDim);
  return slice_core<long double>(widen(h.direction), h.offset, false).volume;
}

long double projected_barycenter_float(const Halfspace& h) {
  check_dimension(h.dimension(), kMaxFloatSliceDim);
  return slice_core<long double>(widen(h.direction), h.offset, false).projected;
}

ExtendedSliceStats slice_stats_extended(const std::vector<long double>& direction,
                                        long double offset, bool with_barycenter) {
  check_dimension(static_cast<int>(direction.size()), kMaxFloatSliceDim);
  auto r = slice_core<long double>(direction, offset, with_barycenter);
  return ExtendedSliceStats{r.volume, std::move(r.barycenter), r.projected};
}

ExactSliceStats simplex_slice(int n, const Rational& t) {
  if (n < 1) {
    throw DomainError("simplex slice needs n >= 1");
  }
  if (!(t > Rational(1) - Rational(2, n)) || !(t < Rational(1))) {
    throw DomainError("simplex slice needs 1 - 2/n < t < 1, got t = " + t.str());
  }
  const auto un = static_cast<unsigned>(n);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), un);
  const Rational nn = pow(Rational(n), un);
  const Rational volume = nn * pow(Rational(1) - t, un) / Rational(fact, mpz_class(1)) /
                          pow(Rational(2), un);
  const Rational s = (Rational(n) * t + Rational(1)) / Rational(n + 1);
  return ExactSliceStats{volume, std::vector<Rational>(un, s)};
}

ExactHalfspace diagonal_halfspace(int n, const Rational& t) {
  return ExactHalfspace{std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)),
                        Rational(n) * t};
}

ExactSliceStats diagonal_slice(const IrwinHallTail& d, const Rational& t) {
  const Rational m = truncated_mean(d, t);
  return ExactSliceStats{d.tail_at(t),
                         std::vector<Rational>(static_cast<std::size_t>(d.n()), m)};
}

}  // namespace isobary
