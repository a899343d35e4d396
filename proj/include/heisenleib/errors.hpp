#pragma once

#include <stdexcept>
#include <string>

namespace heisenleib {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

/// Two quadratic scalars with different radicands met in one operation.
struct IncompatibleFieldError : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct UnknownIndeterminateError : Error {
  using Error::Error;
};

struct UnsupportedDegreeError : Error {
  using Error::Error;
};

struct NotInvertibleError : Error {
  using Error::Error;
};

/// A constraint stage was requested before the stages it depends on.
struct OrderingError : Error {
  using Error::Error;
};

/// Linear elimination derived 0 = c with c != 0.
struct InconsistencyError : Error {
  using Error::Error;
};

struct NotSubalgebraError : Error {
  using Error::Error;
};

struct NoWitnessError : Error {
  using Error::Error;
};

/// Malformed text or file input. `context` names the offending field or line.
struct ParseError : Error {
  ParseError(const std::string& what, std::string where = {})
      : Error(where.empty() ? what : where + ": " + what), context(std::move(where)) {}
  std::string context;
};

}  // namespace heisenleib
