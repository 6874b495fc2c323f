#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plumb {

/// Malformed textual input (plumbing DSL, Seifert shorthand, descriptors).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line > 0 ? message + " at line " + std::to_string(line) + ", column " +
                                          std::to_string(column)
                                    : message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates an operation's precondition
/// (not a tree, not negative definite, wrong graph shape, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity that must hold did not. Never expected on valid input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace plumb
