#pragma once

#include <stdexcept>
#include <string>

namespace symcone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

class SingularElement : public Error {
 public:
  using Error::Error;
};

class NotInCone : public Error {
 public:
  using Error::Error;
};

class EigenNonConvergence : public Error {
 public:
  using Error::Error;
};

/// Multivariate gamma evaluated at or beyond a pole of one of its factors.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Laplace transform argument leaves the region where the transform is finite.
class OutOfRegion : public Error {
 public:
  using Error::Error;
};

/// Wishart shape outside the absolutely continuous range.
class InvalidShape : public Error {
 public:
  using Error::Error;
};

/// Least-squares design matrix without full column rank.
class DegenerateGrid : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside the domain it is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace symcone
