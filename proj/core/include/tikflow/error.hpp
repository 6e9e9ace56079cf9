#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "tikflow/vector.hpp"

namespace tikflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested an operation the catalog has no exact implementation for.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument violates a stated precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of the operator it was handed to.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Inner fixed-point iteration ran out of iterations.
class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, Vector last_iterate,
                      double residual, std::size_t iterations,
                      double expected_iterations)
      : NumericalError(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations),
        expected_iterations_(expected_iterations) {}

  const Vector& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }
  /// A-priori iteration count predicted by the contraction factor.
  double expected_iterations() const noexcept { return expected_iterations_; }

 private:
  Vector last_iterate_;
  double residual_;
  std::size_t iterations_;
  double expected_iterations_;
};

/// Adaptive integrator could not keep the step above its floor.
class StiffnessError : public NumericalError {
 public:
  StiffnessError(const std::string& what, double time)
      : NumericalError(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Integrated state became non-finite.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, double time)
      : NumericalError(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace tikflow
