#pragma once

#include <stdexcept>
#include <string>

namespace fluctwell {

/// Base of every error the library raises. The CLI maps subclasses to exit
/// codes: domain/validation -> 1, I/O -> 2, numerical -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (non-positive width, q = 0,
/// interference node, invalid spec, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Noise parameters that leave the small-σ regime the model is defined in,
/// e.g. too many unphysical Monte-Carlo draws.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Not enough usable samples for a fit.
class InsufficientDataError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature did not settle within the allowed node doubling. Carries the
/// last two estimates.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double fine, double coarse)
      : Error(what), fine_(fine), coarse_(coarse) {}

  double fine_estimate() const noexcept { return fine_; }
  double coarse_estimate() const noexcept { return coarse_; }

 private:
  double fine_;
  double coarse_;
};

/// An internal consistency check failed (e.g. imaginary residue after
/// combining conjugate integrals).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fluctwell
