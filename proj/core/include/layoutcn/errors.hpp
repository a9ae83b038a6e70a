#pragma once

#include <stdexcept>
#include <string>

namespace layoutcn {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a hyperplane vector would be all zero.
class ZeroVectorError : public Error {
public:
  using Error::Error;
};

/// Raised when vector/matrix/point dimensionalities do not agree.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Raised for invalid loop or reference positions.
class IndexError : public Error {
public:
  using Error::Error;
};

/// Raised when an input document violates the program or network schema.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Raised when a value is not a member of its variable's domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Raised when exhaustive enumeration would exceed the configured cap.
class CapError : public Error {
public:
  using Error::Error;
};

/// Raised for invalid cache configurations.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Raised when an assignment is missing a layout for a referenced array.
class IncompleteAssignmentError : public Error {
public:
  using Error::Error;
};

/// Raised when a value-level invariant is violated (e.g. a layout whose
/// rows admit no unimodular completion).
class InvariantError : public Error {
public:
  using Error::Error;
};

} // namespace layoutcn
