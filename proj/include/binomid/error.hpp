#pragma once

#include <stdexcept>
#include <string>

namespace binomid {

/// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inexact division or another broken arithmetic invariant.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Evaluation failure: unbound variable, constraint violation, bad grid.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Malformed rewrite request (pattern mismatch, bad factor index).
class RewriteError : public Error {
 public:
  using Error::Error;
};

/// A series coefficient was requested outside the accuracy window, or a
/// series operation could not guarantee exactness.
class WindowError : public Error {
 public:
  using Error::Error;
};

}  // namespace binomid
