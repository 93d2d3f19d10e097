#include "isobary/halfspace_solver.hpp"

#include "isobary/irwin_hall.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace isobary {

namespace {

using Vec = std::vector<long double>;

long double norm2(const Vec& v) {
  long double s = 0;
  for (long double x : v) s += x * x;
  return std::sqrt(s);
}

// Clamps into the closed positive orthant and rescales to unit norm.
std::optional<Vec> project(Vec v) {
  for (auto& x : v) x = std::max(x, 0.0L);
  const long double nv = norm2(v);
  if (!(nv > 0)) {
    return std::nullopt;
  }
  for (auto& x : v) x /= nv;
  return v;
}

struct Evaluation {
  long double offset = 0;
  Vec residual;
  long double norm = 0;
};

class Problem {
 public:
  Problem(Vec target, const SolveOptions& options) : target_(std::move(target)), opt_(options) {}

  std::size_t dim() const { return target_.size(); }
  const Vec& target() const { return target_; }

  // Offset c with <theta, b(theta, c)> = <theta, x>, by bisection.
  long double offset_for(const Vec& theta) const {
    long double tau = 0;
    long double total = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      tau += theta[i] * target_[i];
      total += theta[i];
    }
    long double lo = -total;
    long double hi = total;
    while (hi - lo > opt_.inner_tolerance) {
      const long double mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      long double g = 0;
      try {
        g = slice_stats_extended(theta, mid, false).projected;
      } catch (const EmptySlice&) {
        hi = mid;
        continue;
      }
      if (g < tau) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return (lo + hi) / 2;
  }

  Evaluation evaluate(const Vec& theta) const {
    Evaluation e;
    e.offset = offset_for(theta);
    const auto stats = slice_stats_extended(theta, e.offset, true);
    e.residual.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i) e.residual[i] = stats.barycenter[i] - target_[i];
    e.norm = norm2(e.residual);
    return e;
  }

 private:
  Vec target_;
  const SolveOptions& opt_;
};

struct StartResult {
  Vec theta;
  long double offset = 0;
  long double residual = 0;
  int iterations = 0;
};

// Damped Gauss-Newton on the unit sphere with a finite-difference Jacobian
// in an orthonormal basis of the tangent space.
StartResult newton(const Problem& prob, Vec theta, const SolveOptions& opt) {
  const std::size_t d = prob.dim();
  const long double floor = std::min(1e-13L, static_cast<long double>(opt.tolerance) * 1e-3L);
  Evaluation cur = prob.evaluate(theta);
  int it = 0;
  for (; it < opt.max_iterations && cur.norm > floor; ++it) {
    Eigen::VectorXd th(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) th(static_cast<Eigen::Index>(i)) = static_cast<double>(theta[i]);
    const Eigen::MatrixXd q = th.householderQr().householderQ();
    const auto k = static_cast<Eigen::Index>(d - 1);
    Eigen::MatrixXd basis = q.rightCols(k);

    Eigen::MatrixXd jac(static_cast<Eigen::Index>(d), k);
    for (Eigen::Index col = 0; col < k; ++col) {
      Vec moved = theta;
      for (std::size_t i = 0; i < d; ++i) {
        moved[i] += opt.fd_step * basis(static_cast<Eigen::Index>(i), col);
      }
      const auto proj = project(std::move(moved));
      if (!proj) {
        throw NonConvergence("direction left the positive orthant", static_cast<double>(cur.norm), it);
      }
      const Evaluation e = prob.evaluate(*proj);
      for (std::size_t i = 0; i < d; ++i) {
        jac(static_cast<Eigen::Index>(i), col) =
            static_cast<double>((e.residual[i] - cur.residual[i]) / opt.fd_step);
      }
    }
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) rhs(static_cast<Eigen::Index>(i)) = -static_cast<double>(cur.residual[i]);
    const Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd step = basis * delta;

    bool accepted = false;
    long double lambda = 1;
    for (int halving = 0; halving < 40; ++halving, lambda /= 2) {
      Vec trial = theta;
      for (std::size_t i = 0; i < d; ++i) trial[i] += lambda * step(static_cast<Eigen::Index>(i));
      const auto proj = project(std::move(trial));
      if (!proj) continue;
      Evaluation e;
      try {
        e = prob.evaluate(*proj);
      } catch (const EmptySlice&) {
        continue;
      }
      if (e.norm < cur.norm) {
        theta = *proj;
        cur = std::move(e);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      break;  // stagnated at the noise floor of the inner solve
    }
  }
  return StartResult{std::move(theta), cur.offset, cur.norm, it};
}

std::vector<Vec> starting_points(const Vec& a, bool multistart) {
  std::vector<Vec> out;
  if (auto p = project(a)) out.push_back(*p);
  if (!multistart) {
    return out;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vec shifted = a;
    shifted[i] += 0.3L;
    if (auto p = project(std::move(shifted))) out.push_back(*p);
    Vec shrunk = a;
    shrunk[i] *= 0.3L;
    if (auto p = project(std::move(shrunk))) out.push_back(*p);
  }
  return out;
}

double verified_residual(const Halfspace& h, std::span<const double> x) {
  const SliceStats stats = slice_stats(h);
  long double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double diff = static_cast<long double>(stats.barycenter[i]) - x[i];
    s += diff * diff;
  }
  return static_cast<double>(std::sqrt(s));
}

}  // namespace

SolveResult solve(std::span<const double> x, const SolveOptions& options) {
  const auto n = static_cast<int>(x.size());
  if (n < 1 || n > kMaxSolveDim) {
    throw DomainError("solver dimension " + std::to_string(n) + " outside [1, " +
                      std::to_string(kMaxSolveDim) + "]");
  }
  std::vector<std::size_t> support;
  Vec a;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > -1 && x[i] < 1)) {
      throw DomainError("barycenter must lie in the open cube");
    }
    if (x[i] != 0) {
      support.push_back(i);
      a.push_back(std::fabs(static_cast<long double>(x[i])));
    }
  }
  if (support.empty()) {
    throw DomainError("barycenter 0 is attained only by the whole cube");
  }

  SolveResult result;
  Vec theta;
  long double offset = 0;
  if (support.size() == 1) {
    theta = {1.0L};
    offset = 2 * a[0] - 1;
  } else {
    const Problem prob(a, options);
    const auto starts = starting_points(a, options.multistart);
    std::vector<StartResult> done;
    std::optional<StartResult> last_failure;
    for (const auto& s : starts) {
      try {
        StartResult r = newton(prob, s, options);
        if (r.residual <= options.tolerance) {
          done.push_back(std::move(r));
        } else {
          last_failure = std::move(r);
        }
      } catch (const NonConvergence&) {
      } catch (const DomainError&) {
      }
    }
    result.starts = static_cast<int>(starts.size());
    result.converged_starts = static_cast<int>(done.size());
    if (done.empty()) {
      const double res = last_failure ? static_cast<double>(last_failure->residual)
                                      : std::numeric_limits<double>::infinity();
      const int its = last_failure ? last_failure->iterations : 0;
      throw NonConvergence("no start converged; best residual " + std::to_string(res), res, its);
    }
    const auto best = std::min_element(done.begin(), done.end(), [](const auto& l, const auto& r) {
      return l.residual < r.residual;
    });
    long double spread = 0;
    for (const auto& r : done) {
      for (std::size_t i = 0; i < r.theta.size(); ++i) {
        spread = std::max(spread, std::fabs(r.theta[i] - best->theta[i]));
      }
      spread = std::max(spread, std::fabs(r.offset - best->offset));
    }
    result.multistart_spread = static_cast<double>(spread);
    result.multistart_agreement =
        done.size() == starts.size() && spread <= options.agreement_tolerance;
    result.iterations = best->iterations;
    theta = best->theta;
    offset = best->offset;
  }

  std::vector<double> direction(x.size(), 0.0);
  for (std::size_t j = 0; j < support.size(); ++j) {
    const double v = static_cast<double>(theta[j]);
    direction[support[j]] = x[support[j]] < 0 ? -v : v;
  }
  result.halfspace = normalized(std::move(direction), static_cast<double>(offset));
  result.residual = verified_residual(result.halfspace, x);
  if (!(result.residual <= options.tolerance)) {
    throw NonConvergence("verified residual " + std::to_string(result.residual) +
                             " exceeds tolerance",
                         result.residual, result.iterations);
  }
  return result;
}

DiagonalSolution solve_diagonal(int n, const Rational& m) {
  const IrwinHallTail& d = shared_irwin_hall(n);
  const Rational target = abs(m);
  if (target.is_zero() || !(target < Rational(1))) {
    throw DomainError("diagonal barycenter needs 0 < |m| < 1");
  }
  DiagonalSolution out;
  out.lower = m.sign() < 0;
  auto finish = [&](Rational t, bool exact) {
    out.t = out.lower ? -t : t;
    out.exact = exact;
    return out;
  };

  // m is increasing from m(-1) = 0; on the last piece m(t) = (n t + 1)/(n + 1).
  const Rational last_start = Rational(1) - Rational(2, n);
  if (!(truncated_mean(d, last_start) > target)) {
    return finish((Rational(n + 1) * target - Rational(1)) / Rational(n), true);
  }
  Rational lo(-1);
  Rational hi = last_start;
  for (int k = 1; k < n - 1; ++k) {
    const Rational b = Rational(2 * k, n) - Rational(1);
    if (truncated_mean(d, b) > target) {
      hi = b;
      break;
    }
    lo = b;
  }
  for (int i = 0; i < 64; ++i) {
    const Rational mid = (lo + hi) / Rational(2);
    const Rational value = truncated_mean(d, mid);
    if (value == target) {
      return finish(mid, true);
    }
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Rational simple = simplest_between(lo, hi);
  if (truncated_mean(d, simple) == target) {
    return finish(simple, true);
  }
  return finish((lo + hi) / Rational(2), false);
}

}  // namespace isobary
