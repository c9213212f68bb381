#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aegdm {

/// Root of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f(theta) + c <= 0 at an evaluated point; the energy variable is undefined there.
class NonPositiveShiftedValue : public Error {
 public:
  NonPositiveShiftedValue(double f_value, double c);
  double f_value() const { return f_value_; }
  double c() const { return c_; }

 private:
  double f_value_;
  double c_;
};

class NonSPD : public Error {
 public:
  using Error::Error;
};

class InvalidBatch : public Error {
 public:
  using Error::Error;
};

class ComparatorMissing : public Error {
 public:
  using Error::Error;
};

class UnboundedDomain : public Error {
 public:
  using Error::Error;
};

class InsufficientSeeds : public Error {
 public:
  using Error::Error;
};

class MismatchedProblem : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }
  /// Message without the line prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class UnknownKey : public ParseError {
 public:
  using ParseError::ParseError;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace aegdm
