#pragma once

#include "isobary/errors.hpp"
#include "isobary/polynomial.hpp"
#include "isobary/rational.hpp"

#include <cstddef>
#include <vector>

namespace isobary {

/// Raised when an argument lies outside [-1, 1].
class OutOfDomain : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A function on [-1, 1] given by one polynomial per interval between
/// consecutive breakpoints.
///
/// Breakpoints start at -1, end at 1 and increase strictly. At an interior
/// breakpoint the right-hand piece is used; at t = 1 the last piece is used.
/// Immutable after construction.
class PiecewisePoly {
 public:
  enum class Continuity { kRequire, kAllowJumps };

  PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces,
                Continuity continuity = Continuity::kRequire);

  static PiecewisePoly constant(const Rational& value);

  const std::vector<Rational>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const noexcept { return pieces_; }
  std::size_t piece_count() const noexcept { return pieces_.size(); }

  /// Index of the piece that owns t under the right-piece convention.
  std::size_t piece_index(const Rational& t) const;
  bool is_breakpoint(const Rational& t) const;

  Rational evaluate(const Rational& t) const;
  Rational operator()(const Rational& t) const { return evaluate(t); }

  /// Integral of f over [t, 1].
  Rational integrate_tail(const Rational& t) const;

  /// Piecewise derivative; jumps at breakpoints are allowed in the result.
  PiecewisePoly differentiate() const;
  /// The continuous antiderivative F with F(-1) = 0.
  PiecewisePoly antiderivative() const;
  /// The continuous function t -> integral of f over [t, 1].
  PiecewisePoly tail_integral() const;

 private:
  void check_domain(const Rational& t) const;

  std::vector<Rational> breakpoints_;
  std::vector<Polynomial> pieces_;
};

}  // namespace isobary
