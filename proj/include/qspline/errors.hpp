#pragma once

#include <stdexcept>
#include <string>

namespace qspline {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid interval, too few subintervals, or a point outside [a,b].
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied function failed or returned a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Pivot below threshold during elimination.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// The discretized problem does not determine a unique solution.
class DegenerateProblemError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qspline
