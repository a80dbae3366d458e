#pragma once

#include <stdexcept>
#include <string>

namespace freqtune {

/// Invalid configuration (bad qubit counts, inconsistent layouts, empty
/// datasets, ...). The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape mismatch between vectors, matrices or qubit ranges.
struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure: eigensolver breakdown, non-finite loss, violated
/// boundedness invariants.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Least-squares design matrix is rank deficient (aliased frequencies).
struct ConditioningError : std::runtime_error {
  explicit ConditioningError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Metric is undefined for the given inputs (e.g. zero-variance targets).
struct MetricError : std::runtime_error {
  explicit MetricError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Min-max scaling impossible (constant raw targets).
struct ScalingError : std::runtime_error {
  explicit ScalingError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file contents.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem / IO failure. The CLI maps this to exit code 3.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace freqtune
