#pragma once

#include <stdexcept>
#include <string>

namespace galcoh {

// Error categories map one-to-one onto the C API status codes and the CLI
// exit codes (see galcoh.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int code() const noexcept { return 5; }
};

// Mathematically invalid input: a square d, repeated roots, a map that is
// not equivariant, a polynomial that is not Eisenstein, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
  int code() const noexcept override { return 2; }
};

// A p-adic decision could not be certified within the precision cap.
class PrecisionError : public Error {
 public:
  using Error::Error;
  int code() const noexcept override { return 3; }
};

// A job document does not follow the schema.
class SchemaError : public Error {
 public:
  using Error::Error;
  int code() const noexcept override { return 4; }
};

// The requested computation is outside what the library supports.
class Unsupported : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace galcoh
