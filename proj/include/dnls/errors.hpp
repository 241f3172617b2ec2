#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

// Precondition violated by the caller.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A spatial grid too small to represent the requested band.
class AliasingError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Operation requested on a representation the object does not carry.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Quadrature or iteration failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, std::string diagnostics = {})
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

// Fixed-point or time-stepping iteration left its contractive regime.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& what, std::vector<double> history)
      : NumericError(what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

// A checked property did not hold.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dnls
