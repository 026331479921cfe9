#pragma once

#include <stdexcept>
#include <string>

namespace kgen {

// Argument outside the mathematical domain of a function (x <= 0 for a
// logarithm, u == 1 for a quantile, a parameter violating its invariant).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested moment (or a quantity built on it) does not exist for the
// given parameters.
class MomentDivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Lorenz curve, and everything derived from it, is undefined because the
// mean diverges (alpha / kappa <= 1 for the kappa-generalized family).
class CurveNonexistenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Mixture Gini denominator vanishes.
class DegenerateNormalizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Sample carries no information about the requested parameters.
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kgen
