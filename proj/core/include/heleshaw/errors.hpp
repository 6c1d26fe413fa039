#pragma once

#include <stdexcept>
#include <string>

namespace heleshaw {

// Base class for everything thrown by the library. `ConfigError` means the
// request itself was malformed; all other subclasses mean a well-formed
// request failed numerically or physically.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration or CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A root bracket did not straddle a sign change, or a parameter interval
// had the same qualitative outcome at both ends.
class BracketError : public Error {
 public:
  using Error::Error;
};

// An iterative solve stalled or exceeded its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Function evaluated outside its domain of definition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parameter combination violates a solvability precondition.
class InvalidParameters : public Error {
 public:
  using Error::Error;
};

// The requested equilibrium cannot exist: the work done by the driving
// singularities against the external field has the wrong sign.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// Degenerate or inconsistent geometry (nonpositive area, non-simple
// boundary where a simple one is required).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Sampled data is not resolved by the requested grid, or a coefficient
// sequence fails to decay like an analytic function's.
class AnalyticityError : public Error {
 public:
  using Error::Error;
};

// Recognized input that the implementation deliberately does not cover.
class UnsupportedScenario : public Error {
 public:
  using Error::Error;
};

}  // namespace heleshaw
