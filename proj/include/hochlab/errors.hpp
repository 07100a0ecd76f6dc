#pragma once

#include <stdexcept>
#include <string>

namespace hochlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear system has no solution; in homological use the target is not a boundary.
class NoSolution : public Error {
 public:
  using Error::Error;
};

class NotACycle : public Error {
 public:
  using Error::Error;
};

// A degree at the edge of a truncated window was requested as if it were reliable.
class WindowBoundary : public Error {
 public:
  using Error::Error;
};

// A composition would leave the arity or degree truncation of an operad.
class ArityOverflow : public Error {
 public:
  using Error::Error;
};

// A spectral-sequence zig-zag could not be completed inside the window.
class LiftFailure : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration left several candidates and refuses to pick one.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

}  // namespace hochlab
