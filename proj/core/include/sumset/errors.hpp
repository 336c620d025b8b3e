#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumset {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch (non-square matrix, ragged points, deficient span).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (files, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A scan or memory budget was exhausted. `reached` is the last parameter
/// value (usually N) that was fully processed, or -1 if none was.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::int64_t reached = -1)
      : Error(what), reached_(reached) {}
  std::int64_t reached() const noexcept { return reached_; }

 private:
  std::int64_t reached_;
};

/// A mathematical invariant failed. Always indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sumset
