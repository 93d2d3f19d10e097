#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace isobary {

/// An argument outside the documented domain of an operation. The violated
/// condition is kept as data so callers can tell "inapplicable" from
/// "violated".
class DomainError : public std::domain_error {
 public:
  explicit DomainError(std::string condition)
      : std::domain_error(condition), condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

}  // namespace isobary
