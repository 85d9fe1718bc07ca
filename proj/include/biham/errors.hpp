#pragma once

#include <stdexcept>
#include <string>

namespace biham {

/// Base class for every failure that means "the input lies outside the
/// domain where the formula is defined", as opposed to a programming error.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two eigenvalues (or two diagonal entries of Q) are closer than tol_reg.
class NotRegular : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotInvertible : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A Gauss pivot vanished: the matrix is outside the factorizable cell.
class SingularMinor : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Principal square root requested for a number on the negative real axis.
class BranchCut : public DomainError {
 public:
  using DomainError::DomainError;
};

class Overflow : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvarianceViolated : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Derivatives on a real slice do not have the symmetry class the slice requires.
class SymmetryViolated : public DomainError {
 public:
  using DomainError::DomainError;
};

class SizeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace biham
