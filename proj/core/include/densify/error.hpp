#pragma once

#include <stdexcept>
#include <string>

namespace densify {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid dimensions, or two grids whose dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A depth value outside the range an operation can represent.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A map in the wrong encoding (Direct vs Inverted) for the operation.
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Bad parameter: even kernel size, non-positive sigma, unknown enum name...
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input with no valid depth at all.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or codec failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace densify
