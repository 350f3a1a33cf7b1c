#pragma once

#include <stdexcept>
#include <string>

namespace logbouss {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A quadrature or truncation target could not be met.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Time integration aborted (CFL violation or non-finite state).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace logbouss
