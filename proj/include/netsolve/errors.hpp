#pragma once

#include <stdexcept>
#include <string>

namespace netsolve {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs: wrong dimensions, out-of-range parameters, malformed files.
// The CLI maps these to exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

// Failures that happen while computing despite valid inputs (retry budgets
// exhausted, I/O trouble, violated runtime assertions). CLI exit code 2.
struct RuntimeFailure : Error {
  using Error::Error;
};

struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};
struct SingularMatrix : ValidationError {
  using ValidationError::ValidationError;
};
struct IndexOutOfRange : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidParams : ValidationError {
  using ValidationError::ValidationError;
};
struct TooLarge : ValidationError {
  using ValidationError::ValidationError;
};
struct EmptyInput : ValidationError {
  using ValidationError::ValidationError;
};
struct Disconnected : ValidationError {
  using ValidationError::ValidationError;
};
struct DegenerateInitial : ValidationError {
  using ValidationError::ValidationError;
};
struct FileFormatError : ValidationError {
  using ValidationError::ValidationError;
};

struct GenerationFailed : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct BoundViolated : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct IoError : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};

}  // namespace netsolve
