#ifndef EBAND_ERRORS_HPP
#define EBAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eband {

/// Numeric input that violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the validity range of an empirical model.
class OutOfBandError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Regulatory or plan-rule violation (power ceilings, aggregation limits).
class PolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid channel aggregation request (non-contiguous, cross-band, bad index).
class AggregationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate antenna geometry (coincident elements, zero-norm axis).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: solver residual above contract, bracket not found, etc.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested EDOF unattainable even at the near end of the search range.
class InfeasibleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Geometric bracket expansion exhausted without finding a sign change.
class BracketRangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Frame numerology whose integer identities do not hold.
class NumerologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incomplete input document (scenario / numerology JSON).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario that violates its structural invariants.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eband

#endif  // EBAND_ERRORS_HPP
