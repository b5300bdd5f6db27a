#include "bernstein/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bernstein/errors.hpp"
#include "bernstein/numerics.hpp"

namespace bernstein {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Largest delta for which the constants are built; larger requests reuse it.
double effective_delta(double delta) {
  const double cap = std::nextafter(1.0 / std::numbers::e, 0.0);
  return std::min(delta, cap);
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw PreconditionError("delta must be positive and finite, got " +
                            fmt(delta));
  }
}

// log |1 - z/mu| for complex z.
double log_abs_factor(std::complex<double> z, double mu) {
  const double re = 1.0 - z.real() / mu;
  const double im = z.imag() / mu;
  return 0.5 * std::log(re * re + im * im);
}

double log_abs_on_circle_max(const EntireProduct& B, double r, int samples) {
  double best = kNegInf;
  for (int j = 0; j < samples; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / samples;
    best = std::max(best, log_abs_product(B, std::polar(r, angle)));
  }
  return best;
}

}  // namespace

ZeroSet::ZeroSet(std::vector<double> zeros, std::string note, bool truncated)
    : zeros_(std::move(zeros)), note_(std::move(note)), truncated_(truncated) {
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    const double z = zeros_[i];
    if (!std::isfinite(z) || z == 0.0) {
      throw PreconditionError("ZeroSet: zeros must be finite and nonzero, got " +
                              fmt(z));
    }
    if (i > 0 && !(zeros_[i - 1] < z)) {
      throw PreconditionError(
          "ZeroSet: zeros must be strictly increasing (simple), at " + fmt(z));
    }
  }
}

namespace {

ZeroSet mirrored_family(std::vector<double> positive, bool both_signs,
                        std::string note) {
  std::vector<double> zeros;
  if (both_signs) {
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
      zeros.push_back(-*it);
    }
  }
  zeros.insert(zeros.end(), positive.begin(), positive.end());
  return ZeroSet(std::move(zeros), std::move(note), true);
}

}  // namespace

ZeroSet ZeroSet::n_squared(int n_max, bool both_signs) {
  if (n_max < 1) throw PreconditionError("n_squared: n_max must be >= 1");
  std::vector<double> positive;
  for (int n = 1; n <= n_max; ++n) positive.push_back(double(n) * n);
  return mirrored_family(std::move(positive), both_signs,
                         std::string(both_signs ? "+-" : "+") +
                             "n^2, 1 <= n <= " + std::to_string(n_max));
}

ZeroSet ZeroSet::lacunary_2n(int n_max, bool both_signs) {
  if (n_max < 0 || n_max > 1000) {
    throw PreconditionError("lacunary_2n: n_max must lie in [0, 1000]");
  }
  std::vector<double> positive;
  for (int n = 0; n <= n_max; ++n) positive.push_back(std::ldexp(1.0, n));
  return mirrored_family(std::move(positive), both_signs,
                         std::string(both_signs ? "+-" : "+") +
                             "2^n, 0 <= n <= " + std::to_string(n_max));
}

long ZeroSet::index_of(double lambda) const {
  auto it = std::lower_bound(zeros_.begin(), zeros_.end(), lambda);
  if (it == zeros_.end() || *it != lambda) return -1;
  return static_cast<long>(it - zeros_.begin());
}

double SignedLog::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

EntireProduct::EntireProduct(ZeroSet zeros, double a0)
    : zeros_(std::move(zeros)), a0_(a0) {
  if (a0 == 0.0 || !std::isfinite(a0)) {
    throw PreconditionError("EntireProduct: a0 must be finite and nonzero");
  }
}

Counting counting(const ZeroSet& zs, double R) {
  if (!(R > 0.0)) throw PreconditionError("counting: R must be positive");
  Counting c{0, 0.0};
  CompensatedSum sum;
  for (double z : zs.zeros()) {
    if (std::abs(z) < R) {
      ++c.n;
      sum += 1.0 / z;
    }
  }
  c.delta_sum = sum.value();
  return c;
}

SignedLog eval_product(const EntireProduct& B, double x) {
  int sign = B.a0() > 0.0 ? 1 : -1;
  CompensatedSum log_abs;
  log_abs += std::log(std::abs(B.a0()));
  for (double mu : B.zeros()) {
    if (x == mu) return {0, kNegInf};
    const double factor = 1.0 - x / mu;
    if (factor == 0.0) return {0, kNegInf};
    if (factor < 0.0) sign = -sign;
    log_abs += std::log(std::abs(factor));
  }
  return {sign, log_abs.value()};
}

double log_abs_product(const EntireProduct& B, std::complex<double> z) {
  CompensatedSum sum;
  sum += std::log(std::abs(B.a0()));
  for (double mu : B.zeros()) {
    if (z == std::complex<double>(mu, 0.0)) return kNegInf;
    sum += log_abs_factor(z, mu);
  }
  return sum.value();
}

std::complex<double> eval_product_complex(const EntireProduct& B,
                                          std::complex<double> z) {
  std::complex<double> value = B.a0();
  for (double mu : B.zeros()) value *= 1.0 - z / mu;
  return value;
}

SignedLog derivative_at_zero_log(const EntireProduct& B, double lambda) {
  const long index = B.zero_set().index_of(lambda);
  if (index < 0) {
    throw DomainError("derivative_at_zero: " + fmt(lambda) +
                      " is not a zero of the product");
  }
  // B'(lambda) = -(a0 / lambda) prod_{mu != lambda} (1 - lambda / mu)
  int sign = (B.a0() > 0.0) == (lambda > 0.0) ? -1 : 1;
  CompensatedSum log_abs;
  log_abs += std::log(std::abs(B.a0())) - std::log(std::abs(lambda));
  const auto zeros = B.zeros();
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (static_cast<long>(i) == index) continue;
    const double factor = 1.0 - lambda / zeros[i];
    if (factor < 0.0) sign = -sign;
    log_abs += std::log(std::abs(factor));
  }
  return {sign, log_abs.value()};
}

double derivative_at_zero(const EntireProduct& B, double lambda) {
  return derivative_at_zero_log(B, lambda).value();
}

ThetaResult theta(const EntireProduct& B) {
  ThetaResult result{0.0, 0.0, 0.0};
  CompensatedSum sum;
  double edge = -1.0;
  for (double lambda : B.zeros()) {
    const double term = std::exp(-derivative_at_zero_log(B, lambda).log_abs);
    sum += term;
    result.largest_term = std::max(result.largest_term, term);
    if (std::abs(lambda) > edge) {
      edge = std::abs(lambda);
      result.tail_term = term;
    } else if (std::abs(lambda) == edge) {
      result.tail_term = std::max(result.tail_term, term);
    }
  }
  result.value = sum.value();
  return result;
}

std::vector<TypeSample> type_estimate(const EntireProduct& B,
                                      std::span<const double> radii,
                                      int samples) {
  if (samples < 4) throw PreconditionError("type_estimate: samples must be >= 4");
  std::vector<TypeSample> trace;
  double previous = 0.0;
  for (double r : radii) {
    if (!(r > previous)) {
      throw PreconditionError("type_estimate: radii must be positive increasing");
    }
    previous = r;
    trace.push_back({r, log_abs_on_circle_max(B, r, samples) / r});
  }
  return trace;
}

double estimate_c_eps(const EntireProduct& B, double eps, int circle_samples) {
  if (!(eps > 0.0)) throw PreconditionError("estimate_c_eps: eps must be > 0");
  if (circle_samples < 4) {
    throw PreconditionError("estimate_c_eps: circle_samples must be >= 4");
  }
  constexpr int kCircles = 16;
  constexpr int kRefinements = 2;
  constexpr double kSafety = 1.05;

  double largest = 0.0;
  for (double z : B.zeros()) largest = std::max(largest, std::abs(z));
  const double r_max =
      std::max({10.0 * largest, 2.0 * double(B.zeros().size()) / eps, 10.0});
  const double r_min = std::min(1.0, r_max / 10.0);

  auto circle_log = [&](double r) {
    return log_abs_on_circle_max(B, r, circle_samples) - eps * r;
  };
  auto geometric = [](double lo, double hi, int count) {
    std::vector<double> radii;
    for (int k = 0; k < count; ++k) {
      radii.push_back(lo * std::pow(hi / lo, double(k) / (count - 1)));
    }
    return radii;
  };

  // Inside the innermost circle the max modulus bound alone is used.
  double best = log_abs_on_circle_max(B, r_min, circle_samples);
  std::vector<double> radii = geometric(r_min, r_max, kCircles);
  for (int pass = 0; pass <= kRefinements; ++pass) {
    std::size_t arg = 0;
    double pass_best = kNegInf;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double v = circle_log(radii[k]);
      if (v > pass_best) {
        pass_best = v;
        arg = k;
      }
    }
    best = std::max(best, pass_best);
    const double lo = radii[arg == 0 ? 0 : arg - 1];
    const double hi = radii[std::min(arg + 1, radii.size() - 1)];
    if (!(hi > lo)) break;
    radii = geometric(lo, hi, kCircles);
  }
  return kSafety * std::exp(best);
}

double PerturbationPlan::max_shift(std::size_t i) const {
  return rho_delta * std::exp(-delta * std::abs(zeros.at(i)));
}

double normalizing_translation(const ZeroSet& zs) {
  const auto z = zs.zeros();
  if (z.empty()) return 0.0;
  const double lo = z.front();
  const double hi = z.back();
  if (lo > 0.0) return lo > 1.0 ? 0.0 : lo - 2.0;
  if (hi < 0.0) return hi < -1.0 ? 0.0 : hi + 2.0;
  // Two-sided: the neighbours straddling the origin must be symmetric.
  auto first_positive = std::upper_bound(z.begin(), z.end(), 0.0);
  const double right = *first_positive;
  const double left = *(first_positive - 1);
  if (std::abs(left + right) <=
      1e-12 * std::max(std::abs(left), std::abs(right))) {
    return 0.0;
  }
  return 0.5 * (left + right);
}

PerturbationPlan lemma1_constants(const EntireProduct& B, double delta,
                                  int circle_samples) {
  require_delta(delta);
  if (B.zeros().empty()) {
    throw PreconditionError("lemma1_constants: the zero set is empty");
  }
  PerturbationPlan plan;
  plan.delta = delta;
  plan.delta_eff = effective_delta(delta);
  plan.eps = plan.delta_eff / 2.0;
  plan.translation = normalizing_translation(B.zero_set());
  plan.zeros.assign(B.zeros().begin(), B.zeros().end());

  const double a = plan.translation;
  std::vector<double> moved;
  moved.reserve(plan.zeros.size());
  for (double z : plan.zeros) moved.push_back(z - a);
  const double a0 = a == 0.0 ? B.a0() : eval_product(B, a).value();
  if (a0 == 0.0 || !std::isfinite(a0)) {
    throw GrowthError("lemma1_constants: B at the translation point is " +
                      fmt(a0));
  }
  const EntireProduct normalized(ZeroSet(std::move(moved)), a0);

  plan.theta = theta(normalized).value;
  if (!std::isfinite(plan.theta)) {
    throw GrowthError("lemma1_constants: Theta_B is not finite");
  }
  plan.c_eps = estimate_c_eps(normalized, plan.eps, circle_samples);
  if (!std::isfinite(plan.c_eps)) {
    throw GrowthError("lemma1_constants: C_eps estimate is not finite");
  }
  const double root =
      std::exp(-plan.eps) / (4.0 + 8.0 * plan.c_eps * plan.theta);
  plan.rho_delta_normalized = root * root;
  plan.rho_delta = std::exp(-plan.delta_eff * std::abs(a)) *
                   plan.rho_delta_normalized;
  if (!(plan.rho_delta > 0.0)) {
    throw GrowthError("lemma1_constants: rho_delta underflows to 0");
  }

  CompensatedSum log_product;
  for (double z : normalized.zeros()) {
    const double d = root * std::exp(-plan.eps * std::abs(z));
    plan.deltas_lambda.push_back(d);
    log_product += 2.0 * std::log1p(d);
  }
  plan.c_delta = 4.0 * std::abs(a0) * std::exp(log_product.value());
  if (!std::isfinite(plan.c_delta)) {
    throw GrowthError("lemma1_constants: C_delta is not finite");
  }
  plan.note = "C_eps estimated, conservative direction";
  if (delta != plan.delta_eff) {
    plan.note += "; constants built for delta just below 1/e";
  }
  if (a != 0.0) plan.note += "; constants built for a translated zero set";
  return plan;
}

std::vector<double> maximal_shifts(const PerturbationPlan& plan, int sign) {
  std::vector<double> shifts;
  for (std::size_t i = 0; i < plan.zeros.size(); ++i) {
    shifts.push_back(sign >= 0 ? plan.max_shift(i) : -plan.max_shift(i));
  }
  return shifts;
}

std::vector<double> random_admissible_shifts(const PerturbationPlan& plan,
                                             std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> shifts;
  for (std::size_t i = 0; i < plan.zeros.size(); ++i) {
    const double m = plan.max_shift(i);
    shifts.push_back(std::clamp(rng.uniform(-m, m), -m, m));
  }
  return shifts;
}

GeometryReport plan_geometry(const PerturbationPlan& plan) {
  GeometryReport g;
  g.disjoint = make_bound_report("2-Delta intervals pairwise disjoint", 0.0);
  g.midpoint = make_bound_report("neighbour midpoints outside the union", 0.0);
  g.origin = make_bound_report("origin outside the union", 0.0);
  g.containment =
      make_bound_report("admissible window inside [l - Delta, l + Delta]",
                        1e-12, true);
  const double a = plan.translation;
  const auto& d = plan.deltas_lambda;
  for (std::size_t i = 0; i < plan.zeros.size(); ++i) {
    const double z = plan.zeros[i] - a;
    g.origin.add(plan.zeros[i], 2.0 * d[i], std::abs(z));
    // Admissible window rho e^{-delta|z|} against Delta^2, compared in logs
    // because both underflow far out; Delta^2 <= Delta iff Delta <= 1.
    const double log_window =
        std::log(plan.rho_delta_normalized) - plan.delta_eff * std::abs(z);
    const double log_delta_sq =
        std::log(plan.rho_delta_normalized) - 2.0 * plan.eps * std::abs(z);
    g.containment.add(plan.zeros[i], std::exp(log_window - log_delta_sq), 1.0);
    g.containment.add(plan.zeros[i], d[i], 1.0);
    if (i + 1 < plan.zeros.size()) {
      const double next = plan.zeros[i + 1] - a;
      const double mid = 0.5 * (z + next);
      g.disjoint.add(plan.zeros[i], z + 2.0 * d[i], next - 2.0 * d[i + 1]);
      g.midpoint.add(plan.zeros[i], z + 2.0 * d[i], mid);
      g.midpoint.add(plan.zeros[i + 1], mid, next - 2.0 * d[i + 1]);
    }
  }
  g.pass = g.disjoint.pass && g.midpoint.pass && g.origin.pass &&
           g.containment.pass;
  // A single-zero set has no neighbours; vacuous checks pass.
  if (plan.zeros.size() < 2) {
    g.disjoint.pass = g.midpoint.pass = true;
    g.pass = g.origin.pass && g.containment.pass;
  }
  return g;
}

PerturbationResult perturb(const EntireProduct& B, const PerturbationPlan& plan,
                           std::span<const double> shifts) {
  const auto zeros = B.zeros();
  if (plan.zeros.size() != zeros.size() ||
      !std::equal(zeros.begin(), zeros.end(), plan.zeros.begin())) {
    throw PreconditionError("perturb: the plan was built for another zero set");
  }
  if (shifts.size() != zeros.size()) {
    throw PreconditionError("perturb: expected " + std::to_string(zeros.size()) +
                            " shifts, got " + std::to_string(shifts.size()));
  }
  std::vector<double> moved;
  moved.reserve(zeros.size());
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (!(std::abs(shifts[i]) <= plan.max_shift(i))) {
      throw InadmissibleShift("perturb: shift " + fmt(shifts[i]) +
                                 " is not admissible at lambda = " +
                                 fmt(zeros[i]) + " (limit " +
                                 fmt(plan.max_shift(i)) + ")",
                             zeros[i]);
    }
    moved.push_back(zeros[i] + shifts[i]);
  }
  ZeroSet moved_set(std::move(moved), B.zero_set().note() + ", perturbed",
                    B.zero_set().truncated());
  double a0 = 1.0;
  if (plan.translation != 0.0) {
    const SignedLog at = eval_product(EntireProduct(moved_set, 1.0),
                                      plan.translation);
    if (at.sign == 0) {
      throw PreconditionError("perturb: a perturbed zero hit the translation point");
    }
    a0 = at.sign * std::exp(-at.log_abs);
  }

  PerturbationResult result{EntireProduct(std::move(moved_set), a0), plan,
                            make_bound_report("|B'(l)| <= C_delta |D'(d_l)|",
                                              1e-12, true),
                            {}, false};
  result.plan.shifts.assign(shifts.begin(), shifts.end());
  const auto dz = result.D.zeros();
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const double lb = derivative_at_zero_log(B, zeros[i]).log_abs;
    const double ld = derivative_at_zero_log(result.D, dz[i]).log_abs;
    result.conclusion.add(zeros[i], std::exp(lb - ld), plan.c_delta);
  }
  result.disjointness = plan_geometry(plan).disjoint;
  result.pass = result.conclusion.pass && result.disjointness.pass;
  return result;
}

BoundReport separation_check(const EntireProduct& B, double delta,
                             double c_eps, double theta_value) {
  require_delta(delta);
  const double eps = effective_delta(delta) / 2.0;
  BoundReport report = make_bound_report(
      "gap to nearest zero > e^{-eps} e^{-eps|l|} / (1 + 2 C_eps Theta)", 0.0);
  const auto z = B.zeros();
  const double scale = std::exp(-eps) / (1.0 + 2.0 * c_eps * theta_value);
  for (std::size_t i = 0; i < z.size(); ++i) {
    double gap = std::numeric_limits<double>::infinity();
    if (i > 0) gap = std::min(gap, z[i] - z[i - 1]);
    if (i + 1 < z.size()) gap = std::min(gap, z[i + 1] - z[i]);
    const double bound = scale * std::exp(-eps * std::abs(z[i]));
    report.add(z[i], bound, gap);
  }
  // The inequality is strict.
  if (report.max_violation >= 0.0) report.pass = false;
  return report;
}

BoundReport separation_check(const EntireProduct& B, double delta) {
  require_delta(delta);
  const double eps = effective_delta(delta) / 2.0;
  return separation_check(B, delta, estimate_c_eps(B, eps), theta(B).value);
}

RatioCheck ratio_bound_check(double a, double b, double x, double Delta) {
  if (!(Delta > 0.0 && Delta < 1.0)) {
    throw PreconditionError("ratio_bound_check: Delta must lie in (0, 1)");
  }
  const double d2 = Delta * Delta;
  if (!(b > a - d2 && b < a + d2)) {
    throw PreconditionError("ratio_bound_check: b must lie in (a - Delta^2, a + Delta^2)");
  }
  if (a - Delta < 0.0 && 0.0 < a + Delta) {
    throw PreconditionError("ratio_bound_check: 0 must not lie in (a - Delta, a + Delta)");
  }
  if (a - 2.0 * Delta < x && x < a + 2.0 * Delta) {
    throw PreconditionError("ratio_bound_check: x must not lie in (a - 2 Delta, a + 2 Delta)");
  }
  RatioCheck r;
  r.ratio = std::abs((1.0 - x / a) / (1.0 - x / b));
  r.bound = (1.0 + Delta) * (1.0 + Delta);
  r.pass = r.ratio <= r.bound;
  return r;
}

CauchyReport cauchy_bound_check(const EntireProduct& B, double eps,
                                std::span<const std::complex<double>> grid,
                                double c_eps) {
  if (!(eps > 0.0 && eps < 1.0 / (2.0 * std::numbers::e))) {
    throw PreconditionError("cauchy_bound_check: eps must lie in (0, 1/(2e))");
  }
  CauchyReport report;
  report.c_eps = c_eps > 0.0 ? c_eps : estimate_c_eps(B, eps);
  report.derivative =
      make_bound_report("|B'(z)| <= C_eps e^{eps|z|}", 1e-9, true);
  report.quotient =
      make_bound_report("|B(z)/(z - l)| <= C_eps e^{eps|z|}", 1e-9, true);
  const auto zeros = B.zeros();
  for (std::complex<double> z : grid) {
    const double bound = report.c_eps * std::exp(eps * std::abs(z));
    const double h = 1e-5 * (1.0 + std::abs(z));
    const std::complex<double> derivative =
        (eval_product_complex(B, z + h) - eval_product_complex(B, z - h)) /
        (2.0 * h);
    report.derivative.add(std::abs(z), std::abs(derivative), bound);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      // B(z) / (z - l) = -(a0 / l) prod_{mu != l} (1 - z / mu)
      double log_abs = std::log(std::abs(B.a0() / zeros[i]));
      for (std::size_t j = 0; j < zeros.size(); ++j) {
        if (j != i) log_abs += log_abs_factor(z, zeros[j]);
      }
      report.quotient.add(std::abs(z), std::exp(log_abs), bound);
    }
  }
  report.pass = report.derivative.pass && report.quotient.pass;
  return report;
}

}  // namespace bernstein
