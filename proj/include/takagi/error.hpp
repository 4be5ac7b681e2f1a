#pragma once

#include <stdexcept>
#include <string>

namespace takagi {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (bad radix, point out of [0,1],
/// point in D when a generic point is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (point grammar, digit words).
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A computational cap was hit: cycle length, lookahead distance,
/// interval count. The input is valid but the work is unbounded in practice.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace takagi
