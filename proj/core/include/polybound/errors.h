#ifndef POLYBOUND_ERRORS_H_
#define POLYBOUND_ERRORS_H_

#include <stdexcept>
#include <string>

namespace polybound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(format(line, column, message)),
        line_(line),
        column_(column),
        detail_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  static std::string format(int line, int column, const std::string& message) {
    if (line <= 0) return message;
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  int line_;
  int column_;
  std::string detail_;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// A size limit (oracle cap, component cap, universe size) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class LpError : public Error {
 public:
  using Error::Error;
};

}  // namespace polybound

#endif  // POLYBOUND_ERRORS_H_
