#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dixie {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: bad law parameters, malformed specs, violated hypotheses.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A law specification string that does not parse. `token()` is the offending piece.
class ParseError : public DomainError {
 public:
  ParseError(std::string token, const std::string& what)
      : DomainError(what + " (offending token: '" + token + "')"), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

// The rare subfamily does not satisfy the decay hypothesis (Case I law).
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A value is not representable in double precision (factorial, exponential growth, ...).
class RangeError : public Error {
 public:
  RangeError(const std::string& what, std::size_t largest_feasible)
      : Error(what), largest_feasible_(largest_feasible) {}

  // Largest size for which the computation is representable; 0 if none.
  std::size_t largest_feasible() const noexcept { return largest_feasible_; }

 private:
  std::size_t largest_feasible_;
};

class StateSpaceError : public RangeError {
 public:
  StateSpaceError(double states, double limit)
      : RangeError("Markov state space too large: " + std::to_string(states) + " states (limit " +
                       std::to_string(limit) + ")",
                   0),
        states_(states) {}

  double states() const noexcept { return states_; }

 private:
  double states_;
};

// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double partial_value, double error_estimate)
      : Error(what), partial_value_(partial_value), error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  double error_estimate_;
};

// A simulation summary contains trials that hit the draw cap.
class TaintedSimulationError : public Error {
 public:
  TaintedSimulationError(const std::string& what, std::size_t capped)
      : Error(what), capped_(capped) {}

  std::size_t capped_trials() const noexcept { return capped_; }

 private:
  std::size_t capped_;
};

}  // namespace dixie
