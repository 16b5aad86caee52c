#pragma once

#include <stdexcept>
#include <string>

namespace gl3gl2 {

// Argument violates an operation's precondition (gcd conditions, level
// restrictions, nonpositive sizes).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation point sits on or too close to a pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A coefficient table or sieve does not cover the requested index.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// The requested object lies outside what the implementation supports, such
// as a cusp-form space whose Hecke eigenvalues are not rational.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gl3gl2
