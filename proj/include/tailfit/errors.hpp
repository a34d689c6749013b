#pragma once

#include <stdexcept>

namespace tailfit {

// Argument outside its admissible range (k out of bounds, s outside (0,1), ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent configuration (percentile grid too small, empty plan, bad weights).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Data-dependent degeneracy (nonpositive order statistic, vanishing denominator).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Singular or nearly singular linear system.
class IllConditionedError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace tailfit
