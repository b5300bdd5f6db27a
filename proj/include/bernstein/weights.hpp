#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bernstein/numerics.hpp"

namespace bernstein {

enum class WeightKind { evaluable, discrete };

struct SupportPoint {
  double x;
  double value;
};

/// A bounded non-negative weight on the real line: either a function that can
/// be evaluated anywhere, or a discrete weight carried by finitely many
/// support points. Immutable after construction.
class Weight {
 public:
  /// Evaluable weight. `even_nonincreasing` asserts that w(x) = w(-x) and that
  /// w is nonincreasing in |x|; window suprema then have a closed form.
  static Weight evaluable(RealFunction f, double bound, std::string name,
                          bool even_nonincreasing = false);
  /// Discrete weight. Points must be strictly increasing in x with strictly
  /// positive values. A non-positive bound defaults to the largest value.
  static Weight discrete(std::vector<SupportPoint> points, double bound = 0.0,
                         std::string name = "discrete");

  WeightKind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == WeightKind::discrete; }
  double bound() const { return bound_; }
  const std::string& name() const { return name_; }
  bool even_nonincreasing() const { return even_nonincreasing_; }
  std::span<const SupportPoint> points() const { return points_; }

  /// Support points with lo <= x <= hi.
  std::span<const SupportPoint> points_in(double lo, double hi) const;

  /// Weight value at x (same as eval_weight).
  double operator()(double x) const;
  /// Unclamped value of the underlying function (discrete: same as
  /// operator()).
  double raw(double x) const;

 private:
  Weight() = default;

  WeightKind kind_ = WeightKind::evaluable;
  RealFunction f_;
  std::vector<SupportPoint> points_;
  double bound_ = 1.0;
  std::string name_;
  bool even_nonincreasing_ = false;
};

/// w = 0.
Weight zero_weight();
/// exp(-|x|).
Weight exp_abs_weight();
/// exp(-x^2).
Weight gauss_weight();
/// exp(-|x|^alpha), alpha > 0.
Weight freud_weight(double alpha);

/// Discrete returns the stored value at an exact support point and 0
/// elsewhere; evaluable returns f(x) clamped to [0, bound]. Throws
/// EvaluationError when f(x) is NaN.
double eval_weight(const Weight& w, double x);

/// sup of w over the closed interval [lo, hi]: exact for discrete weights and
/// for even nonincreasing ones, grid_sup with tolerance `tol` otherwise.
double weight_sup(const Weight& w, double lo, double hi, double tol = 1e-12);

/// 2^-k for k = 1..count.
std::vector<double> dyadic_deltas(int count = 30);

/// Approximation of the upper Baire function M_w(x) = lim_{d->0} sup over
/// (x - d, x + d): sups over the given decreasing windows until three
/// consecutive values agree within 1e-12, counting only windows of half-width
/// at most 2^-20. Exact for discrete weights.
double upper_baire(const Weight& w, double x,
                   std::span<const double> deltas = {});

struct ClassReport {
  bool bounded_ok = false;
  bool support_unbounded_ok = false;
  int decay_ok_up_to = 0;
  bool usc_ok = false;
  std::string notes;
};

/// Membership diagnostics for the weight classes: boundedness, reach of the
/// support, which powers |x|^n w(x) visibly tend to 0, and upper
/// semicontinuity at random points. Never throws on a "bad" weight.
ClassReport class_check(const Weight& w, int n_max, double radius,
                        std::uint64_t seed = 0);

struct StepSegment {
  int n;
  double lo;
  double hi;
  double value;
};

/// The step majorant built on the log-spaced segments
/// [sign(n) log(1+|n|), sign(n) log(1+|n+1|)].
struct StepWeight {
  std::vector<StepSegment> segments;

  /// Value on the half-open segment containing x, 0 outside the covered set.
  double operator()(double x) const;
  /// Whether x lies in some segment (the n = 0 segment is the point {0}).
  bool covers(double x) const;
  Weight as_weight() const;
};

StepWeight step_weight(const Weight& w, int n_range);

}  // namespace bernstein
