#pragma once

#include "isobary/cube_slice.hpp"
#include "isobary/errors.hpp"
#include "isobary/rational.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isobary {

/// Largest dimension accepted by solve(); residuals are verified exactly.
inline constexpr int kMaxSolveDim = kMaxExactSliceDim;

struct SolveOptions {
  double tolerance = 1e-10;        // required final ||b - x||_2
  double inner_tolerance = 1e-13;  // bracket width for the offset bisection
  double fd_step = 1e-6;           // finite-difference step on the direction
  int max_iterations = 100;
  bool multistart = true;
  double agreement_tolerance = 1e-8;  // sup-norm spread allowed across starts
};

struct SolveResult {
  Halfspace halfspace;          // unit direction
  double residual = 0;          // ||barycenter - x||_2, independently re-evaluated
  int iterations = 0;           // outer iterations of the accepted start
  bool multistart_agreement = true;
  double multistart_spread = 0;  // max sup-norm distance between converged starts
  int starts = 1;
  int converged_starts = 1;
};

/// No halfspace with barycenter x was found to the requested tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Finds the halfspace H = {<theta, u> >= c} whose intersection with
/// [-1,1]^n has barycenter x. Requires x in the open cube, x != 0 and
/// n <= kMaxSolveDim. Zero coordinates get a zero normal component; signs
/// are reflected so the search runs in the positive orthant.
SolveResult solve(std::span<const double> x, const SolveOptions& options = {});

/// t with m_n(t) = |m| for the diagonal halfspace at barycenter m(1,...,1).
/// When m < 0 the slice is the reflected one, {sum u_i <= n t} with t < 0.
struct DiagonalSolution {
  Rational t;
  bool exact = false;  // m_n(t) == |m| holds exactly
  bool lower = false;  // slice is {sum u_i <= n t}
};

/// Exact bisection over the piecewise pieces; returns the simplest rational
/// in the final bracket when it is an exact root, else the bracket midpoint
/// (error below 1e-15). Requires 0 < |m| < 1 and 1 <= n <= kMaxExactN.
DiagonalSolution solve_diagonal(int n, const Rational& m);

}  // namespace isobary
