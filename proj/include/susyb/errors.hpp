#pragma once

#include <stdexcept>
#include <string>

namespace susyb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series hit its term budget before its tail bound held.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different sectors or different n.
class SectorMismatch : public Error {
 public:
  using Error::Error;
};

/// An exponent is negative or breaks the sector congruence.
class LatticeViolation : public Error {
 public:
  using Error::Error;
};

/// A quadrature rule could not meet its tolerance within the node budget.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Input does not lie in the span of the truncated eigenbasis.
class ExpansionResidualError : public Error {
 public:
  using Error::Error;
};

class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// An integrand returned NaN or infinity at a quadrature node.
class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating interchange data.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace susyb
