#pragma once

#include <stdexcept>
#include <string>

namespace rejuv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative time, rho > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The hazard does not age (shape <= 1), so reliability has no interior maximum.
class NoInteriorOptimumError : public Error {
 public:
  using Error::Error;
};

/// rho == 1: the stationarity condition collapses to a zero period.
class DegenerateOptimumError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

/// No candidate satisfies the reliability floor.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Utilization above one, or a job that cannot meet its deadline.
class UnschedulableError : public Error {
 public:
  using Error::Error;
};

/// LRT window does not start and end on hyperperiod boundaries.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

  int line() const noexcept { return line_; }

  /// Same error with `prefix` (typically a file path) in front of the message.
  ParseError prefixed(const std::string& prefix) const {
    return ParseError(Raw{}, prefix + what(), line_);
  }

 private:
  struct Raw {};
  ParseError(Raw, const std::string& message, int line) : Error(message), line_(line) {}

  int line_;
};

}  // namespace rejuv
