#pragma once

#include <stdexcept>
#include <string>

namespace wkp {

/// Input lies outside the mathematical domain of an operation
/// (non-Hermitian where Hermitian is required, k out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dimensions of the operands do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix, map or descriptor file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wkp
