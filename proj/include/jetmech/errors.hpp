#pragma once

#include <stdexcept>
#include <string>

namespace jetmech {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes that do not match the coordinate space.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A point handed to an operation lives in the wrong space.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

/// A scalar field was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The velocity Hessian of a Lagrangian is singular at the requested point.
class SingularLagrangian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Malformed expression text or scenario configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bad argument value (non-positive tolerance, unknown id, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An immersion whose Jacobian lost column rank at a tested point.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

}  // namespace jetmech
