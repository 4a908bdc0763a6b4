#pragma once

#include <stdexcept>
#include <string>

namespace fracfilter {

// Bad argument: Hurst exponent out of range, negative time, zero gain, ...
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The parameters are valid but no evaluator covers them.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quadrature, root finding or factorization did not converge.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double achieved = -1.0)
      : std::runtime_error(what), achieved_(achieved) {}
  // Best error estimate reached before giving up, or -1 when not applicable.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace fracfilter
