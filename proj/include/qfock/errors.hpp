#pragma once

#include <stdexcept>
#include <string>

namespace qfock {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A complex 2x2 matrix does not have the quaternion entry pattern.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

class ZeroInputError : public Error {
 public:
  using Error::Error;
};

/// Probability mass beyond the truncated space (or block) exceeds tolerance.
class TailViolation : public Error {
 public:
  TailViolation(const std::string& what, double tail, long suggested_dim)
      : Error(what), tail_(tail), suggested_dim_(suggested_dim) {}
  double tail() const { return tail_; }
  long suggested_dim() const { return suggested_dim_; }

 private:
  double tail_;
  long suggested_dim_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Parameters that were required to share one slice C_I do not.
class OffSliceError : public Error {
 public:
  using Error::Error;
};

/// A quantity is undefined at the given input (e.g. Mandel Q of the vacuum).
class UndefinedQuantity : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfock
