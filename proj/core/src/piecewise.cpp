#include "isobary/piecewise.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace isobary {

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces,
                             Continuity continuity)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.size() < 2 || pieces_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("PiecewisePoly: need k+1 breakpoints for k pieces");
  }
  if (breakpoints_.front() != Rational(-1) || breakpoints_.back() != Rational(1)) {
    throw std::invalid_argument("PiecewisePoly: breakpoints must span [-1, 1]");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1] < breakpoints_[i])) {
      throw std::invalid_argument("PiecewisePoly: breakpoints must increase strictly");
    }
  }
  if (continuity == Continuity::kRequire) {
    for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
      if (pieces_[i - 1](breakpoints_[i]) != pieces_[i](breakpoints_[i])) {
        throw std::invalid_argument("PiecewisePoly: discontinuity at breakpoint " +
                                    breakpoints_[i].str());
      }
    }
  }
}

PiecewisePoly PiecewisePoly::constant(const Rational& value) {
  return PiecewisePoly({Rational(-1), Rational(1)}, {Polynomial::constant(value)});
}

void PiecewisePoly::check_domain(const Rational& t) const {
  if (t < breakpoints_.front() || t > breakpoints_.back()) {
    throw OutOfDomain("argument " + t.str() + " outside [-1, 1]");
  }
}

std::size_t PiecewisePoly::piece_index(const Rational& t) const {
  check_domain(t);
  // First breakpoint strictly greater than t; its predecessor owns t.
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
  return std::min(idx - 1, pieces_.size() - 1);
}

bool PiecewisePoly::is_breakpoint(const Rational& t) const {
  return std::binary_search(breakpoints_.begin(), breakpoints_.end(), t);
}

Rational PiecewisePoly::evaluate(const Rational& t) const { return pieces_[piece_index(t)](t); }

Rational PiecewisePoly::integrate_tail(const Rational& t) const {
  const std::size_t k = piece_index(t);
  Rational total;
  for (std::size_t j = k; j < pieces_.size(); ++j) {
    const Polynomial anti = pieces_[j].antiderivative();
    const Rational& lo = j == k ? t : breakpoints_[j];
    total += anti(breakpoints_[j + 1]) - anti(lo);
  }
  return total;
}

PiecewisePoly PiecewisePoly::differentiate() const {
  std::vector<Polynomial> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    out.push_back(p.derivative());
  }
  return PiecewisePoly(breakpoints_, std::move(out), Continuity::kAllowJumps);
}

PiecewisePoly PiecewisePoly::antiderivative() const {
  std::vector<Polynomial> out;
  out.reserve(pieces_.size());
  Rational running;  // F(left breakpoint of current piece)
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    Polynomial anti = pieces_[j].antiderivative();
    anti += Polynomial::constant(running - anti(breakpoints_[j]));
    running = anti(breakpoints_[j + 1]);
    out.push_back(std::move(anti));
  }
  return PiecewisePoly(breakpoints_, std::move(out));
}

PiecewisePoly PiecewisePoly::tail_integral() const {
  std::vector<Polynomial> out(pieces_.size());
  Rational running;  // integral from the right breakpoint of piece j to 1
  for (std::size_t i = pieces_.size(); i-- > 0;) {
    const Polynomial anti = pieces_[i].antiderivative();
    // I(t) = running + A(b_{i+1}) - A(t)
    Polynomial piece = Polynomial::constant(running + anti(breakpoints_[i + 1]));
    piece -= anti;
    running = piece(breakpoints_[i]);
    out[i] = std::move(piece);
  }
  return PiecewisePoly(breakpoints_, std::move(out));
}

}  // namespace isobary
