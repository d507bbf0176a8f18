#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bcdt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. Carries the 1-based location and the tokens that
/// would have been accepted there.
class SyntaxError : public Error {
public:
  SyntaxError(std::string message, int line, int column, std::vector<std::string> expected);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

/// Well-formed text describing an invalid formula (reversed interval, bad weights).
class SemanticError : public Error {
public:
  using Error::Error;
};

/// A temporal window reaches past the last sample of the signal.
class OutOfHorizon : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class EmptyParameterSpace : public Error {
public:
  using Error::Error;
};

/// A formula passed where a single temporal box primitive was required.
class NotAPrimitive : public Error {
public:
  using Error::Error;
};

class TooFewSamples : public Error {
public:
  using Error::Error;
};

} // namespace bcdt
