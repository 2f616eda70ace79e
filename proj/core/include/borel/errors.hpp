#pragma once

#include <stdexcept>
#include <string>

namespace borel {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (characteristic mismatch, index out of range, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

class NotAPthPower : public Error {
 public:
  using Error::Error;
};

class NotSemiInvariant : public Error {
 public:
  using Error::Error;
};

class NotSemiCentral : public Error {
 public:
  using Error::Error;
};

/// The Borel of sl_n constructions need n to be a unit of the ground field.
class NMustBeInvertible : public Error {
 public:
  using Error::Error;
};

class NotPIntegral : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed the configured scale guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace borel
