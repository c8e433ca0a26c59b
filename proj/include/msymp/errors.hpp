#pragma once

#include <stdexcept>
#include <string>

namespace msymp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different coordinate spaces (or a coordinate was
/// referenced outside the space it is used with).
class BundleMismatch : public Error {
 public:
  using Error::Error;
};

/// A point does not assign every coordinate of its space.
class IncompletePoint : public Error {
 public:
  using Error::Error;
};

/// A vector field on E fails the projectability constraints.
class NotProjectable : public Error {
 public:
  using Error::Error;
};

/// A form that was required to be Hamiltonian is not.
class NotHamiltonian : public Error {
 public:
  using Error::Error;
};

/// Two independently computed sides of an identity disagree. This always
/// indicates a bug or an input outside the supported class.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace msymp
