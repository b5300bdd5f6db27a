#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bernstein/bound_report.hpp"

namespace bernstein {

/// A finite, strictly increasing list of nonzero real zeros standing for a
/// possibly truncated zero set.
class ZeroSet {
 public:
  /// Throws PreconditionError on unsorted, repeated, zero or non-finite
  /// entries. `truncated` marks a finite sample of an infinite family.
  explicit ZeroSet(std::vector<double> zeros, std::string note = "",
                   bool truncated = false);

  /// {n^2 : 1 <= n <= n_max}, mirrored to negative values when both_signs.
  static ZeroSet n_squared(int n_max, bool both_signs = true);
  /// {2^n : 0 <= n <= n_max}, mirrored to negative values when both_signs.
  static ZeroSet lacunary_2n(int n_max, bool both_signs = true);

  std::span<const double> zeros() const { return zeros_; }
  std::size_t size() const { return zeros_.size(); }
  double operator[](std::size_t i) const { return zeros_[i]; }
  const std::string& note() const { return note_; }
  bool truncated() const { return truncated_; }
  /// Index of an exact member, or -1.
  long index_of(double lambda) const;

 private:
  std::vector<double> zeros_;
  std::string note_;
  bool truncated_;
};

struct SignedLog {
  int sign;        // -1, 0 or +1
  double log_abs;  // -inf when sign == 0
  double value() const;
};

/// B(z) = a0 * prod (1 - z / lambda) over a ZeroSet.
class EntireProduct {
 public:
  /// Throws PreconditionError when a0 is zero or not finite.
  explicit EntireProduct(ZeroSet zeros, double a0 = 1.0);

  const ZeroSet& zero_set() const { return zeros_; }
  std::span<const double> zeros() const { return zeros_.zeros(); }
  double a0() const { return a0_; }

 private:
  ZeroSet zeros_;
  double a0_;
};

struct Counting {
  std::size_t n;
  double delta_sum;
};

/// Number of zeros with |lambda| < R and the sum of their reciprocals.
Counting counting(const ZeroSet& zs, double R);

/// Sign and log-magnitude of B(x). Exactly {0, -inf} at a zero.
SignedLog eval_product(const EntireProduct& B, double x);

/// log |B(z)| for complex z (-inf at a zero).
double log_abs_product(const EntireProduct& B, std::complex<double> z);

/// B(z) for complex z, by direct multiplication of the factors.
std::complex<double> eval_product_complex(const EntireProduct& B,
                                          std::complex<double> z);

/// B'(lambda) = -(a0 / lambda) prod_{mu != lambda} (1 - lambda / mu), in sign
/// and log-magnitude. Throws DomainError when lambda is not a zero of B.
SignedLog derivative_at_zero_log(const EntireProduct& B, double lambda);
double derivative_at_zero(const EntireProduct& B, double lambda);

struct ThetaResult {
  double value;
  /// Largest single term 1/|B'(lambda)| and the term at the largest |lambda|
  /// (how much the truncation is still adding at its edge).
  double largest_term;
  double tail_term;
};

/// Theta_B = sum of 1/|B'(lambda)| over the zeros, compensated.
ThetaResult theta(const EntireProduct& B);

struct TypeSample {
  double r;
  double log_max_over_r;
};

/// log M(r) / r with M(r) the max of |B| over `samples` points of |z| = r.
std::vector<TypeSample> type_estimate(const EntireProduct& B,
                                      std::span<const double> radii,
                                      int samples = 720);

/// sup over the sampled circles of e^{-eps|z|} |B(z)|, times the 1.05 safety
/// factor. Circles are geometrically spaced from 1 to
/// max(10 max|lambda|, 2 n / eps) and refined around the worst radius.
double estimate_c_eps(const EntireProduct& B, double eps,
                      int circle_samples = 720);

struct PerturbationPlan {
  /// Requested delta; shifts are admissible when |shift| <= rho e^{-delta|l|}.
  double delta;
  /// Delta used for the constants, clamped below 1/e.
  double delta_eff;
  double eps;
  double c_eps;
  double theta;
  /// rho_delta of the original zero set.
  double rho_delta;
  /// rho_delta of the translated (normalized) zero set.
  double rho_delta_normalized;
  /// The constants are built for B(z + translation); 0 when B already has
  /// the required normalization.
  double translation;
  std::vector<double> zeros;
  /// Delta_lambda = sqrt(rho) e^{-eps|lambda - translation|}, per zero.
  std::vector<double> deltas_lambda;
  /// Per-zero shifts d_lambda - lambda; empty until chosen.
  std::vector<double> shifts;
  double c_delta;
  std::string note;

  /// Largest admissible |shift| at zero i.
  double max_shift(std::size_t i) const;
};

/// Translation that brings the zero set into normal position: symmetric
/// nearest zeros around 0 for two-sided sets, all zeros beyond +-1 for
/// one-sided sets. Returns 0 when no translation is needed.
double normalizing_translation(const ZeroSet& zs);

/// Constants of the perturbation construction. Throws PreconditionError for
/// delta <= 0 or an empty zero set, GrowthError when Theta or C_eps is not
/// finite.
PerturbationPlan lemma1_constants(const EntireProduct& B, double delta,
                                  int circle_samples = 720);

/// shift = +-max_shift at every zero (sign +1 or -1).
std::vector<double> maximal_shifts(const PerturbationPlan& plan, int sign = 1);
/// Independent uniform shifts in [-max_shift, max_shift].
std::vector<double> random_admissible_shifts(const PerturbationPlan& plan,
                                             std::uint64_t seed);

struct PerturbationResult {
  EntireProduct D;
  PerturbationPlan plan;
  /// |B'(lambda)| <= C_delta |D'(d_lambda)| at every zero, relative check.
  BoundReport conclusion;
  /// The intervals [l - 2 Delta, l + 2 Delta] are pairwise disjoint.
  BoundReport disjointness;
  bool pass;
};

/// Builds D with zeros lambda + shift and checks the conclusion. Throws
/// PreconditionError naming the zero when a shift is not admissible.
PerturbationResult perturb(const EntireProduct& B, const PerturbationPlan& plan,
                           std::span<const double> shifts);

struct GeometryReport {
  BoundReport disjoint;          // neighbouring 2-Delta intervals
  BoundReport midpoint;          // midpoints outside the union
  BoundReport origin;            // 0 outside the union
  BoundReport containment;       // Delta^2 window inside the Delta window
  bool pass;
};

/// Interval geometry of a plan, in normalized coordinates.
GeometryReport plan_geometry(const PerturbationPlan& plan);

/// min over mu != lambda of |lambda - mu| against
/// e^{-eps} e^{-eps|lambda|} / (1 + 2 C_eps Theta). Reported as
/// bound - gap <= 0 per zero.
BoundReport separation_check(const EntireProduct& B, double delta);
/// Same with externally supplied C_eps and Theta.
BoundReport separation_check(const EntireProduct& B, double delta,
                             double c_eps, double theta);

struct RatioCheck {
  double ratio;
  double bound;
  bool pass;
};

/// |(1 - x/a) / (1 - x/b)| against (1 + Delta)^2. Throws PreconditionError
/// unless Delta in (0,1), b in (a - Delta^2, a + Delta^2),
/// 0 not in (a - Delta, a + Delta) and x not in (a - 2 Delta, a + 2 Delta).
RatioCheck ratio_bound_check(double a, double b, double x, double Delta);

struct CauchyReport {
  double c_eps;
  BoundReport derivative;  // |B'(z)| <= C_eps e^{eps|z|}
  BoundReport quotient;    // |B(z) / (z - lambda)| <= C_eps e^{eps|z|}
  bool pass;
};

/// Checks both estimates at the given points. The derivative is a complex
/// central difference; the quotient is checked for every zero. c_eps <= 0
/// means estimate it with estimate_c_eps. Throws PreconditionError unless
/// eps in (0, 1/(2e)).
CauchyReport cauchy_bound_check(const EntireProduct& B, double eps,
                                std::span<const std::complex<double>> grid,
                                double c_eps = 0.0);

}  // namespace bernstein
