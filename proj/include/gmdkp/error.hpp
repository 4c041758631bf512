#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmdkp {

/// Malformed instance text or config file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A message-passing engine produced NaN/inf. Carries the sweep (and, inside
/// MPGS, the pick) at which it happened.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::size_t sweep, const std::string& what)
      : std::runtime_error("sweep " + std::to_string(sweep) + ": " + what), sweep_(sweep) {}

  std::size_t sweep() const noexcept { return sweep_; }

 private:
  std::size_t sweep_;
};

/// Exhaustive search refused because the state space exceeds the node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance admits no feasible assignment (not even the empty one).
class NoFeasibleAssignment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Saddle-point / root-finding failures in the replica calculator.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmdkp
