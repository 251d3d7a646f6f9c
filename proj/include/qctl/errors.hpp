#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qctl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed structure or formula text. `line` and `column` are 1-based; 0
/// means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string out;
    if (line > 0) {
      out += "line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
      out += ": ";
    } else if (column > 0) {
      out += "position " + std::to_string(column) + ": ";
    }
    return out + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A structure or job violates one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// FPF and X only accept formulas in prenex normal form.
class PrenexError : public Error {
 public:
  using Error::Error;
};

/// The oracle or the internal solver refuses an instance that is too large.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// External solver could not be spawned or produced unusable output.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace qctl
