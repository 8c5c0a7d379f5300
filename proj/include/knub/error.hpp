#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knub {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. line() is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An argument outside the operation's domain (r < 2, r > k, n < 2 for density, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Participation statistics that do not belong to the graph they are used with.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace knub
