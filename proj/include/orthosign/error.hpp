#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthosign {

/// Malformed textual input. Line and column are 1-based; 0 means "not applicable".
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string s = "line " + std::to_string(line);
    if (column != 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// An exhaustive search was asked to run on an instance larger than its guard.
class guard_exceeded : public std::length_error {
public:
  using std::length_error::length_error;
};

/// A cooperative deadline passed before a search finished.
class deadline_exceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace orthosign
