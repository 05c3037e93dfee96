#pragma once

#include <stdexcept>
#include <string>

namespace lavrentiev {

/// Array shapes do not agree (field vs. grid, or two operands).
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of an operation (negative coefficient, N < 2, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Inconsistent setup, e.g. a knot that is not a time-grid node.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values, zero pivots, or diverging iterates.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericError {
public:
  using NumericError::NumericError;
};

class DivergenceError : public NumericError {
public:
  using NumericError::NumericError;
};

} // namespace lavrentiev
