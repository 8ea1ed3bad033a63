#pragma once

#include <stdexcept>
#include <string>

namespace iwalat {

/// Input outside the mathematical domain of an operation (exit code 3 in the CLI).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested result cannot be certified at the available precision (exit code 2).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Valuation asked of an element that is zero to working precision.
struct IndeterminateValuation : DomainError {
  using DomainError::DomainError;
};

}  // namespace iwalat
