#pragma once

#include <stdexcept>
#include <string>

namespace radial {

/// Argument outside the mathematical domain of a function (r <= 0, x <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Disallowed parameter combination, e.g. a Dirichlet half line with d >= 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The delta-potential denominator vanishes at some spectral parameter.
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, double lambda)
      : std::runtime_error(what), lambda_(lambda) {}
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// Kernel requested on (or numerically at) the diagonal x == y.
class DiagonalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iteration or quadrature did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A property that must hold mathematically was observed to fail.
class PropertyViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace radial
