#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chasekit {

// Input text could not be parsed; carries a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A relation symbol was used with two different arities, or a fact does not
// fit the schema it is checked against.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& message)
      : std::runtime_error(message) {}
};

// A chase-backed operation needed a fixpoint but stopped on a guard.
class GuardExhausted : public std::runtime_error {
 public:
  GuardExhausted(const std::string& message, std::size_t stages_run)
      : std::runtime_error(message), stages_run_(stages_run) {}

  std::size_t stages_run() const { return stages_run_; }

 private:
  std::size_t stages_run_;
};

// An l-tuple does not decode to any ground term.
class MalformedEncoding : public std::runtime_error {
 public:
  explicit MalformedEncoding(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace chasekit
