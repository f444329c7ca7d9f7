#pragma once

#include <stdexcept>
#include <string>

namespace ieq {

// Non-finite input or an argument outside the domain of a pure function.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A documented precondition was violated by the caller (grid mismatch,
// non-mean-zero input to an operator restricted to the mean-zero subspace).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Krylov solve did not converge or produced non-finite iterates.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed run configuration or command-line input.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ieq
