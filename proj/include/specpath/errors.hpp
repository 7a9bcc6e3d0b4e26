#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specpath {

// Malformed map or scenario input. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A caller broke a documented precondition (out-of-bounds cell, non-adjacent move, bad config).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The engine broke one of its own invariants (duplicate collision check, parent cycle).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StartBlocked : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specpath
