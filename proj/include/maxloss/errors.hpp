#pragma once

#include <stdexcept>
#include <string>

namespace maxloss {

// Malformed or inconsistent input: invalid trades, duplicate ids, bad pmfs.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that cannot be processed within the oracle's exhaustive-search budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file problem tied to a source location.
class ParseError : public ValidationError {
 public:
  ParseError(std::string source, int line, const std::string& message)
      : ValidationError(source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }

 private:
  std::string source_;
  int line_;
};

}  // namespace maxloss
