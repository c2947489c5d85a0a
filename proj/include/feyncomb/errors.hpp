#pragma once

#include <stdexcept>
#include <string>

namespace feyncomb {

/// Malformed input: bad JSON, unknown ids, inconsistent fixtures.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain (disconnected graph where a
/// connected one is required, non-skew matrix, violated momentum conservation).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact division or exponent bookkeeping could not be carried out.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace feyncomb
