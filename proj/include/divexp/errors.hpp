#pragma once

#include <stdexcept>

namespace divexp {

// Invalid inputs or states where a price cannot be produced. The CLI maps
// every DomainError to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Zero total variance reached a routine that needs v > 0.
class DegenerateVolatility : public DomainError {
 public:
  using DomainError::DomainError;
};

// A price outside the Black no-arbitrage bounds was given for inversion.
class NoImpliedVolatility : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace divexp
