#pragma once

#include <stdexcept>
#include <string>

namespace cuav {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration input (bad syntax, wrong unit
/// suffix, missing required field).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument violates a documented precondition or type invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operation called in a mode it does not support (e.g. single-PR solver
/// with K != 1, mobile scheme without a mission).
class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Non-finite or otherwise out-of-domain numeric input.
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Mission duration shorter than the minimum flight time.
class InfeasibleMission : public Error {
 public:
  InfeasibleMission(double requested_s, double t_min_s);

  double requested() const noexcept { return requested_; }
  double t_min() const noexcept { return t_min_; }

 private:
  double requested_;
  double t_min_;
};

/// Numerical solver could not proceed (e.g. no strictly feasible start).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuav
