#pragma once

#include <stdexcept>
#include <string>

namespace c3bound {

// Failure taxonomy. The numeric values double as CLI exit codes, so keep them
// stable: 2 parameter/domain, 3 bracket, 4 monotonicity, 5 convergence,
// 6 parse, 7 capacity.
enum class ErrorCode : int {
  parameter = 2,
  bracket = 3,
  monotonicity = 4,
  convergence = 5,
  parse = 6,
  capacity = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

// Rejected input values: out-of-range parameters, inconsistent sizes.
struct ParameterError : Error {
  explicit ParameterError(const std::string& what)
      : Error(ErrorCode::parameter, what) {}
};

// Evaluation requested outside a function's mathematical domain
// (e.g. a spread coordinate >= 1/2). Reported as a parameter problem.
struct DomainError : Error {
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::parameter, what) {}
};

// A root finder could not find a sign change on the given interval.
struct BracketError : Error {
  explicit BracketError(const std::string& what)
      : Error(ErrorCode::bracket, what) {}
};

// The verified monotone structure of the rotated system failed at some
// grid point; the message names the offending point.
struct MonotonicityError : Error {
  explicit MonotonicityError(const std::string& what)
      : Error(ErrorCode::monotonicity, what) {}
};

// An iteration finished without meeting its tolerance; carries the best
// iterate so callers can report how close it got.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double phi0, double phi1,
                   double residual_norm)
      : Error(ErrorCode::convergence, what),
        best_phi0(phi0),
        best_phi1(phi1),
        best_residual_norm(residual_norm) {}

  double best_phi0;
  double best_phi1;
  double best_residual_norm;
};

// Malformed text input (graph files); the message carries a line number.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorCode::parse, what) {}
};

// Request exceeds a hard resource guard (e.g. exhaustive enumeration size).
struct CapacityError : Error {
  explicit CapacityError(const std::string& what)
      : Error(ErrorCode::capacity, what) {}
};

}  // namespace c3bound
