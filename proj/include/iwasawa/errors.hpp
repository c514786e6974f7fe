#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

// Two capped-precision quantities with different (p, N) were combined.
class PrecisionMismatch : public Error {
 public:
  using Error::Error;
};

class LevelMismatch : public Error {
 public:
  using Error::Error;
};

class LevelZero : public Error {
 public:
  using Error::Error;
};

// A quantity could not be determined because every digit needed is lost
// below the working precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class ZeroAtPrecision : public Error {
 public:
  using Error::Error;
};

// A formal group law coefficient came out with negative valuation.
class IntegralityViolation : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace iwasawa
