#pragma once

#include <stdexcept>

namespace grunsky_lab {

/// Base class for all recoverable errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary series operation applied to operands of different truncation orders.
class OrderMismatchError : public Error {
 public:
  using Error::Error;
};

/// Truncation order too small for the requested quantity, or index out of range.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// log or sqrt of a series whose constant term is not (numerically) 1.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Composition with an inner series whose constant term is nonzero.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Reversion of a series that is not normalized (c0 = 0, c1 = 1).
class ReversionError : public Error {
 public:
  using Error::Error;
};

/// Operation that requires a normalized series received something else.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Degenerate input: all-zero weight vector, empty region, and the like.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Unknown functional, statement id, or catalog function name.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace grunsky_lab
