#ifndef SMPERF_ERRORS_HPP
#define SMPERF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smperf {

// Base class for all numeric failures. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside a function's domain (pole, z >= 1, invalid parameter set).
class DomainError : public Error {
 public:
  using Error::Error;
};

// No vertical line separates the left and right pole sets of a Mellin-Barnes
// integrand.
class ContourError : public Error {
 public:
  using Error::Error;
};

// A quadrature or series failed to reach its tolerance within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// An improper integral fails to decay (non-integrable parameter regime).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Two independent evaluation routes of the same quantity disagree beyond
// their combined tolerances.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Invalid user input at the CLI surface. Mapped to exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace smperf

#endif
