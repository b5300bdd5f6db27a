#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace bernstein {

using RealFunction = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct GridSupResult {
  double sup_value = 0.0;
  double arg = 0.0;
  std::size_t grid_points = 0;
  std::size_t refinement_levels = 0;
};

/// Default evaluation budget for integrate_bump: 10^6 calls, or the value of
/// the BERNSTEIN_BUDGET environment variable when it is set to a positive
/// integer. Read once per process.
std::size_t default_evaluation_budget();

struct QuadratureOptions {
  std::size_t budget = default_evaluation_budget();
  /// Points inside (a, b) where the integrand may be non-smooth. The
  /// interval is split there before adaptive refinement starts.
  std::vector<double> breakpoints;
};

/// Adaptive Gauss-Kronrod (G10/K21) integration of f over [a, b] to an
/// absolute tolerance. The rule is open: the endpoints a and b are never
/// evaluated, so integrands that vanish to all orders at the ends (and may be
/// undefined there) are handled directly.
///
/// Throws DomainError if a >= b or tol <= 0, EvaluationError if f returns a
/// non-finite value, BudgetExhausted if the budget runs out first.
QuadratureResult integrate_bump(const RealFunction& f, double a, double b,
                                double tol);
QuadratureResult integrate_bump(const RealFunction& f, double a, double b,
                                double tol, const QuadratureOptions& options);

/// Supremum of f over the closed interval [lo, hi] on an adaptively refined
/// dyadic grid. Starts with 257 equispaced points, then repeatedly halves the
/// spacing around the current leaders until the sup changes by less than tol
/// for three consecutive levels (at most 20 levels).
GridSupResult grid_sup(const RealFunction& f, double lo, double hi, double tol);

/// (f(x+h) - f(x-h)) / (2h).
double central_diff(const RealFunction& f, double x, double h);

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Seeded generator whose output is fully specified: mt19937_64, with
/// uniform doubles built from the top 53 bits. Used wherever test vectors
/// must be reproducible across platforms and languages.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/u53";

  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bernstein
