#pragma once

#include "isobary/errors.hpp"
#include "isobary/irwin_hall.hpp"
#include "isobary/rational.hpp"

#include <vector>

namespace isobary {

inline constexpr int kMaxExactSliceDim = 12;
inline constexpr int kMaxFloatSliceDim = 25;

/// {u : <direction, u> >= offset} with a unit direction.
struct Halfspace {
  std::vector<double> direction;
  double offset = 0.0;

  int dimension() const noexcept { return static_cast<int>(direction.size()); }
};

/// Same halfspace with exact, not necessarily normalised, coefficients.
/// (theta, c) and (lambda theta, lambda c) with lambda > 0 are equivalent.
struct ExactHalfspace {
  std::vector<Rational> direction;
  Rational offset;

  int dimension() const noexcept { return static_cast<int>(direction.size()); }
};

/// Scales (direction, offset) so the direction has unit Euclidean norm.
Halfspace normalized(std::vector<double> direction, double offset);
Halfspace normalized(const ExactHalfspace& h);

/// Volume fraction of [-1,1]^n inside a halfspace and the barycenter of the
/// intersection. The full cube has barycenter 0.
struct SliceStats {
  double volume_fraction = 0.0;
  std::vector<double> barycenter;
};

struct ExactSliceStats {
  Rational volume_fraction;
  std::vector<Rational> barycenter;

  SliceStats to_float() const;
};

/// The halfspace misses the open cube.
class EmptySlice : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Exact statistics by inclusion-exclusion over subsets of the nonzero
/// weights. Requires a nonzero direction and dimension <= kMaxExactSliceDim.
ExactSliceStats slice_stats(const ExactHalfspace& h);

/// For dimension <= kMaxExactSliceDim the doubles are taken as exact dyadic
/// rationals and the exact path is used; above that, slice_stats_float.
SliceStats slice_stats(const Halfspace& h);

/// Extended-precision inclusion-exclusion with compensated summation, for
/// dimension <= kMaxFloatSliceDim. Trusted where cross-checked against the
/// exact path.
SliceStats slice_stats_float(const Halfspace& h);

/// Volume fraction only (float path).
long double slice_volume_float(const Halfspace& h);

/// <direction, barycenter> of the slice (float path). Cheaper than the full
/// barycenter: one sum over subsets.
long double projected_barycenter_float(const Halfspace& h);

/// Float-path statistics for an unnormalised long double halfspace, used by
/// iterative solvers. `projected` is <direction, barycenter>.
struct ExtendedSliceStats {
  long double volume_fraction = 0;
  std::vector<long double> barycenter;
  long double projected = 0;
};

ExtendedSliceStats slice_stats_extended(const std::vector<long double>& direction,
                                        long double offset, bool with_barycenter = true);

/// {y : sum y_i >= n t}, the corner simplex at (1,...,1); needs 1 - 2/n < t < 1.
ExactSliceStats simplex_slice(int n, const Rational& t);

/// The halfspace {u : sum u_i >= n t}.
ExactHalfspace diagonal_halfspace(int n, const Rational& t);

/// Slice orthogonal to the main diagonal, read off the Irwin-Hall tail:
/// fraction p(t), barycenter m(t) * (1,...,1). Requires -1 <= t < 1.
ExactSliceStats diagonal_slice(const IrwinHallTail& d, const Rational& t);

}  // namespace isobary
