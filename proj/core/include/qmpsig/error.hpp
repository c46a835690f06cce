#pragma once

#include <stdexcept>
#include <string>

namespace qmpsig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter, index set, or dimension violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A serialized artifact is malformed or has the wrong schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// The verifier ran out of signature copies before finishing its measurements.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Reading or writing an artifact file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmpsig
