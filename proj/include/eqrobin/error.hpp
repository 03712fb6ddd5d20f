#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqrobin {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or empty expression text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("syntax error at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A variable occurs more than once, so the expression is not singular.
class SbeViolation : public Error {
 public:
  explicit SbeViolation(std::string variable)
      : Error("variable '" + variable + "' appears more than once"),
        variable_(std::move(variable)) {}

  const std::string& variable() const noexcept { return variable_; }

 private:
  std::string variable_;
};

/// An assignment or pattern does not match the variable set it is used with.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownCondition : public Error {
 public:
  explicit UnknownCondition(const std::string& name)
      : Error("unknown condition '" + name + "'") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// File could not be read or has the wrong layout.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqrobin
