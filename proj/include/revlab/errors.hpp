#pragma once

#include <stdexcept>
#include <string>

namespace revlab {

/// Argument outside the domain of an operation (x outside [0, l], bad index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation requested at (or too close to) a jump or log-cusp abscissa.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature or synthesis cannot reach its accuracy target at this point.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed run configuration or input file.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace revlab
