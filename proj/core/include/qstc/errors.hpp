#pragma once

#include <stdexcept>
#include <string>

namespace qstc {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad couplings, wrong list lengths).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A structural precondition of an algorithm does not hold (even-length
// parent for glueing, divisibility failure when reducing a char poly).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but outside what the routine supports.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Floating-point routine failed (eigensolver non-convergence, NaNs).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Requested perfect-transfer design has no real positive couplings.
class InfeasibleDesignError : public Error {
 public:
  InfeasibleDesignError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

// Modular factorization could not find enough usable primes.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace qstc
