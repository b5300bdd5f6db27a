#include "bernstein/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bernstein/errors.hpp"

namespace bernstein {

namespace {

void require_window(double eps, double rho) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionError("eps must lie in (0, 1), got " +
                            std::to_string(eps));
  }
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw PreconditionError("rho must lie in (0, 1], got " +
                            std::to_string(rho));
  }
}

// Root of a strictly monotone g on [lo, hi] with g(lo), g(hi) of opposite
// signs (or zero).
template <typename G>
double bisect(G&& g, double lo, double hi) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// 1 - t^2 without cancellation near |t| = 1.
double one_minus_sq(double t) { return (1.0 - t) * (1.0 + t); }

// bump(t) * 2t / (1 - t^2)^2
double bump_first_moment_weight(double t) {
  const double b = bump(t);
  if (b == 0.0) return 0.0;
  const double q = one_minus_sq(t);
  return b * 2.0 * t / (q * q);
}

// bump(t) * t^2 / (1 - t^2)^2
double bump_second_moment_weight(double t) {
  const double b = bump(t);
  if (b == 0.0) return 0.0;
  const double q = one_minus_sq(t);
  return b * t * t / (q * q);
}

}  // namespace

SmoothingConfig SmoothingConfig::with_default_omega(double eps, double rho) {
  SmoothingConfig cfg;
  cfg.eps = eps;
  cfg.rho = rho;
  const double shift = eps * eps / 4.0;
  cfg.omega = [shift](double x) { return 0.25 * std::exp(-x * x - shift); };
  cfg.omega_prime = [shift](double x) {
    return -2.0 * x * 0.25 * std::exp(-x * x - shift);
  };
  return cfg;
}

void SmoothingConfig::validate_at(double x) const {
  require_window(eps, rho);
  if (!omega) throw PreconditionError("SmoothingConfig: omega is not set");
  const double width = omega(x);
  const double cap = 0.25 * std::exp(-eps * std::abs(x));
  if (!(width > 0.0) || width > cap * (1.0 + 1e-12)) {
    throw PreconditionError(
        "SmoothingConfig: need 0 < omega(x) <= e^{-eps|x|}/4 at x = " +
        std::to_string(x));
  }
}

double beta(const Weight& w, double eps, double x) {
  return w(x) + std::exp(-eps * std::abs(x));
}

WindowSup omega_rho_argmax(const Weight& w, double eps, double rho, double x) {
  require_window(eps, rho);
  const double radius = rho * std::exp(-eps * std::abs(x));
  const double lo = x - radius;
  const double hi = x + radius;

  // The exponential part peaks at the window point closest to the origin.
  const double nearest =
      (lo <= 0.0 && hi >= 0.0) ? 0.0 : (std::abs(lo) < std::abs(hi) ? lo : hi);
  const double exp_part = std::exp(-eps * std::abs(nearest));

  if (w.is_discrete()) {
    WindowSup best{exp_part, nearest};
    for (const SupportPoint& p : w.points_in(lo, hi)) {
      const double v = p.value + std::exp(-eps * std::abs(p.x));
      if (v > best.value) best = {v, p.x};
    }
    return best;
  }
  if (w.even_nonincreasing()) {
    return {w(nearest) + exp_part, nearest};
  }
  auto b = [&](double s) { return beta(w, eps, s); };
  const double here = b(x);
  const GridSupResult grid = grid_sup(b, lo, hi, 1e-9 * (1.0 + here));
  WindowSup best{grid.sup_value, grid.arg};
  for (double s : {nearest, x}) {
    const double v = b(s);
    if (v > best.value) best = {v, s};
  }
  return best;
}

double omega_rho(const Weight& w, double eps, double rho, double x) {
  return omega_rho_argmax(w, eps, rho, x).value;
}

std::vector<double> omega_rho_breakpoints(const Weight& w, double eps,
                                          double rho, double lo, double hi) {
  require_window(eps, rho);
  std::vector<double> points;
  auto keep = [&](double y) {
    if (y > lo && y < hi) points.push_back(y);
  };

  // |y| = rho e^{-eps|y|}: where the window starts to contain the origin.
  const double kink =
      bisect([&](double s) { return s - rho * std::exp(-eps * s); }, 0.0, rho);
  keep(kink);
  keep(-kink);

  if (w.is_discrete()) {
    for (const SupportPoint& p : w.points_in(lo - rho, hi + rho)) {
      const double lambda = p.x;
      keep(bisect(
          [&](double y) {
            return y - lambda - rho * std::exp(-eps * std::abs(y));
          },
          lambda, lambda + rho));
      keep(bisect(
          [&](double y) {
            return lambda - y - rho * std::exp(-eps * std::abs(y));
          },
          lambda - rho, lambda));
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double bump(double t) {
  if (!(std::abs(t) < 1.0)) return 0.0;
  return std::exp(-1.0 / one_minus_sq(t));
}

double kappa() {
  static const double value =
      integrate_bump(bump, -1.0, 1.0, 1e-15).value;
  return value;
}

BumpMoments bump_moments() {
  QuadratureOptions split;
  split.breakpoints = {0.0};
  const double abs_moment =
      integrate_bump(
          [](double t) { return std::abs(bump_first_moment_weight(t)); },
          -1.0, 1.0, 1e-15, split)
          .value;
  const double square_moment =
      integrate_bump(bump_second_moment_weight, -1.0, 1.0, 1e-15).value;
  return {kappa(), abs_moment, square_moment};
}

BumpKernel::BumpKernel(double omega) : omega_(omega), normalization_(0.0) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("BumpKernel: omega must be positive");
  }
  const double w2 = omega * omega;
  normalization_ =
      integrate_bump(
          [omega, w2](double s) {
            return std::exp(-w2 / ((omega - s) * (omega + s)));
          },
          -omega, omega, 1e-15 * omega)
          .value;
}

double BumpKernel::operator()(double t) const {
  if (std::abs(t) > omega_) {
    throw DomainError("kernel: |t| exceeds the half-width omega");
  }
  if (std::abs(t) == omega_) return 0.0;
  const double w2 = omega_ * omega_;
  return std::exp(-w2 / ((omega_ - t) * (omega_ + t))) / normalization_;
}

double kernel(double omega_x, double t) { return BumpKernel(omega_x)(t); }

ValueAndDerivative mollified(const RealFunction& f, const RealFunction& omega,
                             double x, const MollifyOptions& options) {
  const double width = omega(x);
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw PreconditionError("mollified: omega(x) must be positive at x = " +
                            std::to_string(x));
  }
  const double width_prime =
      options.omega_prime ? options.omega_prime(x)
                          : central_diff(omega, x, 1e-6 * (1.0 + std::abs(x)));

  QuadratureOptions quad;
  if (options.breakpoints) {
    for (double y : options.breakpoints(x - width, x + width)) {
      quad.breakpoints.push_back((y - x) / width);
    }
  }
  auto shifted = [&](double t) { return f(x + t * width); };

  const double k = kappa();
  const double i0 =
      integrate_bump([&](double t) { return shifted(t) * bump(t); }, -1.0,
                     1.0, options.tol, quad)
          .value;
  const double i1 =
      integrate_bump(
          [&](double t) { return shifted(t) * bump_first_moment_weight(t); },
          -1.0, 1.0, options.tol, quad)
          .value;
  const double value = i0 / k;
  double derivative = i1 / (k * width);
  if (width_prime != 0.0) {
    const double i2 =
        integrate_bump(
            [&](double t) { return shifted(t) * bump_second_moment_weight(t); },
            -1.0, 1.0, options.tol, quad)
            .value;
    derivative += -width_prime / width * value +
                  2.0 * width_prime / (k * width) * i2;
  }
  return {value, derivative};
}

ValueAndDerivative phi(double eps, double x) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionError("phi: eps must lie in (0, 1)");
  }
  QuadratureOptions split;
  split.breakpoints = {-x};
  const double tol = 1e-14 * std::exp(-eps * std::abs(x));
  auto decay = [eps, x](double t) { return std::exp(-eps * std::abs(x + t)); };
  const double i0 =
      integrate_bump([&](double t) { return decay(t) * bump(t); }, -1.0, 1.0,
                     tol, split)
          .value;
  const double i1 =
      integrate_bump(
          [&](double t) { return decay(t) * bump_first_moment_weight(t); },
          -1.0, 1.0, tol, split)
          .value;
  const double prefactor = std::exp(-eps) / (4.0 * kappa());
  return {prefactor * i0, prefactor * i1};
}

namespace {

ValueAndDerivative mollify_omega(const Weight& w, double eps, double rho,
                                 const RealFunction& omega,
                                 const RealFunction& omega_prime, double x) {
  MollifyOptions options;
  options.omega_prime = omega_prime;
  options.tol = 1e-14 * beta(w, eps, x);
  options.breakpoints = [&](double lo, double hi) {
    return omega_rho_breakpoints(w, eps, rho, lo, hi);
  };
  return mollified([&](double y) { return omega_rho(w, eps, rho, y); }, omega,
                   x, options);
}

}  // namespace

ValueAndDerivative smooth_weight_with_derivative(const Weight& w,
                                                 const SmoothingConfig& cfg,
                                                 double x) {
  cfg.validate_at(x);
  return mollify_omega(w, cfg.eps, cfg.rho, cfg.omega, cfg.omega_prime, x);
}

double smooth_weight(const Weight& w, const SmoothingConfig& cfg, double x) {
  cfg.validate_at(x);
  const double width = cfg.omega(x);
  MollifyOptions options;
  options.tol = 1e-14 * beta(w, cfg.eps, x);
  QuadratureOptions quad;
  for (double y : omega_rho_breakpoints(w, cfg.eps, cfg.rho, x - width,
                                        x + width)) {
    quad.breakpoints.push_back((y - x) / width);
  }
  // Substituting t = s * omega(x) turns int K_omega(x, t) Omega(x + t) dt
  // into (1/kappa) int bump(s) Omega(x + s omega(x)) ds.
  return integrate_bump(
             [&](double s) {
               return bump(s) * omega_rho(w, cfg.eps, cfg.rho, x + s * width);
             },
             -1.0, 1.0, options.tol, quad)
             .value /
         kappa();
}

ValueAndDerivative smooth_weight_phi(const Weight& w, double eps, double x) {
  require_window(eps, 0.5);
  return mollify_omega(
      w, eps, 0.5, [eps](double y) { return phi(eps, y).value; },
      [eps](double y) { return phi(eps, y).derivative; }, x);
}

Corollary1Report verify_corollary1(const Weight& w, double eps,
                                   std::span<const double> grid, double h,
                                   double sandwich_tol) {
  require_window(eps, 0.5);
  if (grid.empty()) throw PreconditionError("verify_corollary1: empty grid");
  if (!(h > 0.0)) throw PreconditionError("verify_corollary1: h must be > 0");

  constexpr double kDerivativeConstant = 74.0;
  constexpr double kAgreementRel = 1e-5;
  constexpr double kAgreementAbs = 1e-8;

  Corollary1Report report;
  report.lower = make_bound_report("lower: w + e^{-eps|x|} <= W", sandwich_tol);
  report.upper = make_bound_report("upper: W <= w_eps", sandwich_tol);
  report.derivative =
      make_bound_report("derivative: |W'| <= 74 e^{eps|x|} w_eps", 0.0);
  report.agreement =
      make_bound_report("agreement: analytic vs central-difference W'", 0.0);

  for (double x : grid) {
    Corollary1Row row{};
    row.x = x;
    row.w = w(x);
    row.beta = beta(w, eps, x);
    row.w_eps = omega_rho(w, eps, 1.0, x);
    const ValueAndDerivative smooth = smooth_weight_phi(w, eps, x);
    row.W = smooth.value;
    row.dW_analytic = smooth.derivative;
    const double step = h * phi(eps, x).value;
    row.dW_numeric = central_diff(
        [&](double y) { return smooth_weight_phi(w, eps, y).value; }, x, step);
    row.derivative_bound =
        kDerivativeConstant * std::exp(eps * std::abs(x)) * row.w_eps;

    report.lower.add(x, row.beta, row.W);
    report.upper.add(x, row.W, row.w_eps);
    report.derivative.add(x, std::abs(row.dW_analytic), row.derivative_bound);
    const double scale =
        std::max(std::abs(row.dW_analytic), std::abs(row.dW_numeric));
    report.agreement.add(x, std::abs(row.dW_analytic - row.dW_numeric),
                         std::max(kAgreementRel * scale, kAgreementAbs));
    report.rows.push_back(row);
  }
  report.pass = report.lower.pass && report.upper.pass &&
                report.derivative.pass && report.agreement.pass;
  return report;
}

}  // namespace bernstein
