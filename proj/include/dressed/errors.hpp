#pragma once

#include <stdexcept>
#include <string>

namespace dressed {

// Invalid user input: bad documents, violated invariants, unknown names.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure could not deliver its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownAxis : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class RegimeMismatch : public InputError {
 public:
  using InputError::InputError;
};

class GridMismatch : public InputError {
 public:
  using InputError::InputError;
};

// Mixing angle undefined: omega_tilde = 0 and J^2 + Gamma^2 = 0.
class DegenerateFrame : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientSpan : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dressed
