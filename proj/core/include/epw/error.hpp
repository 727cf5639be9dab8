#pragma once

#include <stdexcept>
#include <string>

namespace epw {

// Caller supplied something outside an operation's domain (bad prime,
// wrong grade, non-isotropic constraint, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The input was well formed but sits on a degenerate locus the operation
// does not handle (wrong stratum, nullity != 1, exhausted sampling budget).
class Degenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that is mathematically impossible happened; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace epw
