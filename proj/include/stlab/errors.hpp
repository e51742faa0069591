#pragma once

#include <stdexcept>
#include <string>

namespace stlab {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative or quadrature routine failed to meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coincident nodes where the formula requires distinct ones.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a hard size guard (oracle-grade routines).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stlab
