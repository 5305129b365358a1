#pragma once

#include <stdexcept>
#include <string>

namespace sofic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input: bad files, bad indices, infeasible
/// generator parameters. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain
/// (irregular graph, unboxed function, failed hypothesis, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded (exact enumeration, ball size, ...).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace sofic
