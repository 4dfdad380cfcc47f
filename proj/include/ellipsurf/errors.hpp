#pragma once

#include <stdexcept>
#include <string>

namespace ellipsurf {

/// Malformed or out-of-contract input (bad axes, non-unit vectors, inadmissible alpha).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside a function's mathematical domain (gamma poles, |x_i| >= 1 for F_D series).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A linear value that cannot be represented in double precision. The natural
/// log of the true value is carried so callers can keep working in log space.
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, double log_value)
      : std::range_error(what), log_value_(log_value) {}

  double log_value() const noexcept { return log_value_; }

 private:
  double log_value_;
};

/// A Monte Carlo integrand returned a non-finite value.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ellipsurf
