#include "bernstein/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bernstein/errors.hpp"

namespace bernstein {

Weight Weight::evaluable(RealFunction f, double bound, std::string name,
                         bool even_nonincreasing) {
  if (!f) throw PreconditionError("Weight::evaluable: empty function");
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw PreconditionError("Weight::evaluable: bound must be positive");
  }
  Weight w;
  w.kind_ = WeightKind::evaluable;
  w.f_ = std::move(f);
  w.bound_ = bound;
  w.name_ = std::move(name);
  w.even_nonincreasing_ = even_nonincreasing;
  return w;
}

Weight Weight::discrete(std::vector<SupportPoint> points, double bound,
                        std::string name) {
  double largest = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SupportPoint& p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.value) || !(p.value > 0.0)) {
      throw PreconditionError(
          "Weight::discrete: support values must be finite and positive");
    }
    if (i > 0 && !(points[i - 1].x < p.x)) {
      throw PreconditionError(
          "Weight::discrete: support points must be strictly increasing");
    }
    largest = std::max(largest, p.value);
  }
  if (bound <= 0.0) bound = largest > 0.0 ? largest : 1.0;
  if (largest > bound) {
    throw PreconditionError("Weight::discrete: a value exceeds the bound");
  }
  Weight w;
  w.kind_ = WeightKind::discrete;
  w.points_ = std::move(points);
  w.bound_ = bound;
  w.name_ = std::move(name);
  return w;
}

std::span<const SupportPoint> Weight::points_in(double lo, double hi) const {
  auto first = std::lower_bound(
      points_.begin(), points_.end(), lo,
      [](const SupportPoint& p, double v) { return p.x < v; });
  auto last = std::upper_bound(
      first, points_.end(), hi,
      [](double v, const SupportPoint& p) { return v < p.x; });
  return {first, last};
}

double Weight::raw(double x) const {
  if (kind_ == WeightKind::discrete) {
    auto hit = points_in(x, x);
    return hit.empty() ? 0.0 : hit.front().value;
  }
  return f_(x);
}

double Weight::operator()(double x) const {
  if (kind_ == WeightKind::discrete) return raw(x);
  const double y = f_(x);
  if (std::isnan(y)) {
    throw EvaluationError("weight '" + name_ + "' returned NaN", x);
  }
  return std::clamp(y, 0.0, bound_);
}

Weight zero_weight() {
  return Weight::evaluable([](double) { return 0.0; }, 1.0, "zero", true);
}

Weight exp_abs_weight() {
  return Weight::evaluable([](double x) { return std::exp(-std::abs(x)); },
                           1.0, "exp_abs", true);
}

Weight gauss_weight() {
  return Weight::evaluable([](double x) { return std::exp(-x * x); }, 1.0,
                           "gauss", true);
}

Weight freud_weight(double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("freud_weight: alpha must be > 0");
  return Weight::evaluable(
      [alpha](double x) { return std::exp(-std::pow(std::abs(x), alpha)); },
      1.0, "freud", true);
}

double eval_weight(const Weight& w, double x) { return w(x); }

double weight_sup(const Weight& w, double lo, double hi, double tol) {
  if (lo > hi) throw DomainError("weight_sup: empty interval");
  if (w.is_discrete()) {
    double best = 0.0;
    for (const SupportPoint& p : w.points_in(lo, hi)) {
      best = std::max(best, p.value);
    }
    return best;
  }
  if (w.even_nonincreasing()) {
    if (lo <= 0.0 && hi >= 0.0) return w(0.0);
    return std::abs(lo) < std::abs(hi) ? w(lo) : w(hi);
  }
  return grid_sup([&w](double t) { return w(t); }, lo, hi, tol).sup_value;
}

std::vector<double> dyadic_deltas(int count) {
  std::vector<double> deltas;
  deltas.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 1; k <= count; ++k) deltas.push_back(std::ldexp(1.0, -k));
  return deltas;
}

double upper_baire(const Weight& w, double x, std::span<const double> deltas) {
  const double here = w(x);
  if (w.is_discrete()) return here;

  std::vector<double> fallback;
  if (deltas.empty()) {
    fallback = dyadic_deltas();
    deltas = fallback;
  }
  constexpr double kStallTol = 1e-12;
  // Wide windows can sit on a plateau or straddle a peak, so agreement only
  // counts once the window is narrow.
  constexpr double kStallWidth = 0x1p-20;
  double value = here;
  double previous = std::numeric_limits<double>::quiet_NaN();
  int agreeing = 0;
  for (double delta : deltas) {
    value = std::max(here, weight_sup(w, x - delta, x + delta, 1e-13));
    if (delta <= kStallWidth && std::abs(value - previous) <= kStallTol) {
      if (++agreeing >= 2) break;
    } else {
      agreeing = 0;
    }
    previous = value;
  }
  return value;
}

namespace {

// Values |x|^n w(x) in increasing |x| order; the trend test asks for a
// nonincreasing last quarter ending below 1% of the peak.
bool decays_to_zero(const std::vector<double>& values) {
  if (values.size() < 4) return false;
  const double peak = *std::max_element(values.begin(), values.end());
  if (peak <= 0.0) return true;
  const std::size_t start = values.size() - values.size() / 4;
  for (std::size_t i = start; i < values.size(); ++i) {
    if (values[i] > values[i - 1] * (1.0 + 1e-12)) return false;
  }
  return values.back() <= 1e-2 * peak;
}

}  // namespace

ClassReport class_check(const Weight& w, int n_max, double radius,
                        std::uint64_t seed) {
  ClassReport report;
  std::ostringstream notes;
  if (n_max < 0 || !(radius > 0.0)) {
    notes << "invalid probe parameters (n_max >= 0 and radius > 0 required); ";
    report.notes = notes.str();
    return report;
  }

  // Probe abscissae |x| in increasing order.
  std::vector<double> radii;
  if (w.is_discrete()) {
    for (const SupportPoint& p : w.points()) {
      if (std::abs(p.x) <= radius) radii.push_back(std::abs(p.x));
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  } else {
    constexpr int kProbes = 64;
    const double start = std::min(1.0, radius);
    for (int k = 0; k < kProbes; ++k) {
      radii.push_back(start *
                      std::pow(radius / start, double(k) / (kProbes - 1)));
    }
  }

  auto value_at = [&](double r) {
    try {
      return std::max(w.raw(r), w.raw(-r));
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  Rng rng(seed);
  bool bounded = true;
  bool finite = true;
  auto probe_bound = [&](double x) {
    const double v = w.raw(x);
    if (std::isnan(v)) {
      finite = false;
    } else if (v < 0.0 || v > w.bound() * (1.0 + 1e-12)) {
      bounded = false;
    }
  };
  for (double r : radii) {
    probe_bound(r);
    probe_bound(-r);
  }
  for (int i = 0; i < 256; ++i) probe_bound(rng.uniform(-radius, radius));
  report.bounded_ok = bounded && finite;
  if (!finite) notes << "weight returned NaN at some probe; ";
  if (!bounded) notes << "values outside [0, bound] observed; ";

  double reach = 0.0;
  if (w.is_discrete()) {
    for (const SupportPoint& p : w.points()) reach = std::max(reach, std::abs(p.x));
  } else {
    for (double r : radii) {
      if (value_at(r) > 0.0) reach = std::max(reach, r);
    }
  }
  report.support_unbounded_ok = reach >= 0.1 * radius;
  if (!report.support_unbounded_ok) {
    notes << "support does not reach 10% of the probe radius; ";
  }

  int decay = -1;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<double> values;
    values.reserve(radii.size());
    for (double r : radii) values.push_back(std::pow(r, n) * value_at(r));
    if (!decays_to_zero(values)) break;
    decay = n;
  }
  report.decay_ok_up_to = std::max(decay, 0);
  if (decay < 0) notes << "no decay trend even for n = 0; ";

  if (w.is_discrete()) {
    report.usc_ok = true;
  } else {
    const std::vector<double> deltas = dyadic_deltas(50);
    const double span = std::min(radius, 10.0);
    bool usc = true;
    for (int i = 0; i < 16 && usc; ++i) {
      const double x = rng.uniform(-span, span);
      try {
        usc = std::abs(upper_baire(w, x, deltas) - w(x)) <= 1e-12;
      } catch (const Error&) {
        usc = false;
      }
    }
    report.usc_ok = usc;
    if (!usc) notes << "w differs from its upper Baire function; ";
  }
  report.notes = notes.str();
  return report;
}

double StepWeight::operator()(double x) const {
  for (const StepSegment& s : segments) {
    if (s.lo == s.hi ? x == s.lo : (x >= s.lo && x < s.hi)) return s.value;
  }
  return 0.0;
}

bool StepWeight::covers(double x) const {
  for (const StepSegment& s : segments) {
    if (s.lo == s.hi ? x == s.lo : (x >= s.lo && x < s.hi)) return true;
  }
  return false;
}

Weight StepWeight::as_weight() const {
  double bound = 0.0;
  for (const StepSegment& s : segments) bound = std::max(bound, s.value);
  return Weight::evaluable([copy = *this](double x) { return copy(x); },
                           bound > 0.0 ? bound : 1.0, "step");
}

StepWeight step_weight(const Weight& w, int n_range) {
  if (n_range < 1) throw PreconditionError("step_weight: n_range must be >= 1");
  StepWeight step;
  step.segments.reserve(static_cast<std::size_t>(2 * n_range + 1));
  for (int n = -n_range; n <= n_range; ++n) {
    const double sign = (n > 0) - (n < 0);
    const double lo = sign * std::log1p(std::abs(n));
    const double hi = sign * std::log1p(std::abs(n + 1));
    step.segments.push_back({n, lo, hi, weight_sup(w, lo, hi)});
  }
  return step;
}

}  // namespace bernstein
