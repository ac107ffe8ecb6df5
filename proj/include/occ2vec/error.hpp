#pragma once

#include <stdexcept>
#include <string>

namespace occ2vec {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or missing input: files, rows, flags, preconditions on user data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A value outside its admissible range (scale ratings, probabilities).
class RangeError : public InputError {
 public:
  using InputError::InputError;
};

/// Numerically degenerate input or a solver that failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Transport failure talking to a remote embedding service.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace occ2vec
