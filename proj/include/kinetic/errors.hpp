#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kinetic {

/// Invalid parameters, inconsistent grids or infeasible plans. Raised before any work starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A projective plan whose step layout cannot be realized (e.g. the outer step is shorter
/// than the inner damping sweep).
class InfeasiblePlan : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Arguments outside the mathematical domain of a formula (non-positive temperature, NaN).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A time step produced a non-finite value. `index()` is the flat index of the first
/// offending entry in the state.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string& what, std::ptrdiff_t index)
      : std::runtime_error(what + " (entry " + std::to_string(index) + ")"), index_(index) {}

  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

}  // namespace kinetic
