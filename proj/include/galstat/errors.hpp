#pragma once

#include <stdexcept>
#include <string>

namespace galstat {

/// Operands that cannot be combined (mismatched statistics, lattice, or an
/// off-lattice point).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request outside what the engine computes.
class UnsupportedCase : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal identity that must hold did not.
class ConsistencyFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (axis not normalized, bad token, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace galstat
