#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bernstein {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (e.g. lo > hi).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A zero of the product lies outside the support of the weight.
class SupportViolation : public PreconditionError {
 public:
  SupportViolation(const std::string& what, double lambda)
      : PreconditionError(what), lambda_(lambda) {}
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// A perturbation shift exceeds rho_delta e^{-delta|lambda|} at lambda.
class InadmissibleShift : public PreconditionError {
 public:
  InadmissibleShift(const std::string& what, double lambda)
      : PreconditionError(what), lambda_(lambda) {}
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// A zero-subset selector kept fewer than two zeros.
class DegenerateFamily : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A user-supplied function returned NaN or an infinity.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double at)
      : Error(what), at_(at) {}
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// Adaptive quadrature could not reach the tolerance within its budget.
/// Carries the best estimate reached so far.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, double best_estimate,
                  double error_estimate, std::size_t evaluations)
      : Error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate),
        evaluations_(evaluations) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double best_estimate_;
  double error_estimate_;
  std::size_t evaluations_;
};

/// A growth constant (C_eps, Theta_B) could not be estimated as a finite
/// number.
class GrowthError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (weight/zero-set JSON, CLI values).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace bernstein
