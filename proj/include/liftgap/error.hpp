#pragma once

#include <stdexcept>
#include <string>

namespace liftgap {

/// Base of every domain error raised by the library. `kind()` is a stable
/// machine-readable tag used in CLI error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class MalformedInput : public Error {
 public:
  explicit MalformedInput(const std::string& m) : Error("malformed-input", m) {}
};

class SizeCapExceeded : public Error {
 public:
  explicit SizeCapExceeded(const std::string& m) : Error("size-cap", m) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& m) : Error("parameter", m) {}
};

class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& m) : Error("hypothesis", m) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& m, int line = 0, int column = 0)
      : Error("parse", format(m, line, column)), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& m, int line, int column) {
    if (line <= 0) return m;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + m;
  }
  int line_;
  int column_;
};

/// Raised when a runtime-checked mathematical identity fails. Seeing one is a
/// bug, not a user error.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& m) : Error("invariant", m) {}
};

}  // namespace liftgap
