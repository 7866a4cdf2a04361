#pragma once

#include <stdexcept>
#include <string>

namespace kummer {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Arguments outside the domain where a formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation at s = 1 of a function with a pole there.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

// Working precision was not enough to certify a result. Callers with an
// escalation policy catch this and retry at higher precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// Division by (or logarithm of) a ball that contains zero.
class CannotDivide : public PrecisionExhausted {
 public:
  using PrecisionExhausted::PrecisionExhausted;
};

// A sign decision that stayed ambiguous at the precision cap.
class Undetermined : public PrecisionExhausted {
 public:
  using PrecisionExhausted::PrecisionExhausted;
};

// An internal consistency check failed; indicates a bug, never a math outcome.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kummer
