#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bernstein/bound_report.hpp"
#include "bernstein/numerics.hpp"
#include "bernstein/weights.hpp"

namespace bernstein {

/// Parameters of the mollified majorant W_eps.
struct SmoothingConfig {
  double eps = 0.5;
  /// Window parameter of the inner sup-smoothing Omega_rho that gets
  /// mollified. The two-sided bound w + e^{-eps|x|} <= W_eps <= w_eps is
  /// guaranteed for rho in [1/3, 9/16]; the standard choice is 1/2.
  double rho = 0.5;
  /// Mollifier half-width; must satisfy 0 < omega(x) <= e^{-eps|x|}/4.
  RealFunction omega;
  /// Optional analytic derivative of omega. When empty, central differences
  /// with h = 1e-6 (1 + |x|) are used.
  RealFunction omega_prime;

  /// omega(x) = exp(-x^2 - eps^2/4) / 4, with its analytic derivative.
  static SmoothingConfig with_default_omega(double eps, double rho = 0.5);

  /// Throws PreconditionError unless eps in (0,1), rho in (0,1] and
  /// 0 < omega(x) <= e^{-eps|x|}/4 at the given x.
  void validate_at(double x) const;
};

struct ValueAndDerivative {
  double value;
  double derivative;
};

/// Location and value of a window supremum.
struct WindowSup {
  double value;
  double arg;
};

/// beta_eps(x) = w(x) + e^{-eps|x|}.
double beta(const Weight& w, double eps, double x);

/// Omega_rho(x) = sup of beta_eps over |s| <= rho e^{-eps|x|}. Omega_1 is the
/// sup-smoothed weight w_eps. Exact for discrete and even nonincreasing
/// weights; grid_sup with tol 1e-9 (1 + beta(x)) otherwise.
double omega_rho(const Weight& w, double eps, double rho, double x);

/// Same as omega_rho, also returning a point of the window where the sup is
/// attained (x + theta e^{-eps|x|} with |theta| <= rho).
WindowSup omega_rho_argmax(const Weight& w, double eps, double rho, double x);

/// Points y in [lo, hi] where y -> Omega_rho(y) may fail to be smooth:
/// the kinks |y| = rho e^{-eps|y|} and, for discrete weights, the points
/// where a support point enters or leaves the window.
std::vector<double> omega_rho_breakpoints(const Weight& w, double eps,
                                          double rho, double lo, double hi);

/// Normalized bump kernel of half-width omega:
/// K(t) = exp(-omega^2 / (omega^2 - t^2)) / N(omega) on (-omega, omega),
/// K(+-omega) = 0. N(omega) is computed once, by quadrature, at construction.
class BumpKernel {
 public:
  explicit BumpKernel(double omega);
  /// Throws DomainError for |t| > omega.
  double operator()(double t) const;
  double omega() const { return omega_; }
  double normalization() const { return normalization_; }

 private:
  double omega_;
  double normalization_;
};

/// One-shot BumpKernel(omega_x)(t).
double kernel(double omega_x, double t);

/// exp(-1 / (1 - t^2)) on (-1, 1), 0 elsewhere.
double bump(double t);

/// kappa = integral of bump over (-1, 1). Computed on first use and cached.
double kappa();

struct BumpMoments {
  double kappa;
  /// integral of 2|t| / (t^2 - 1)^2 bump(t); equals 2/e.
  double abs_moment;
  /// integral of t^2 / (t^2 - 1)^2 bump(t); equals kappa / 2.
  double square_moment;
};

BumpMoments bump_moments();

struct MollifyOptions {
  /// Analytic omega'(x); central differences when empty.
  RealFunction omega_prime;
  /// Absolute quadrature tolerance for each of the integrals.
  double tol = 1e-13;
  /// Non-smooth points of f inside [lo, hi], passed on to the quadrature.
  std::function<std::vector<double>(double lo, double hi)> breakpoints;
};

/// f_omega(x) = (1/kappa) int_{-1}^{1} f(x + t omega(x)) bump(t) dt and its
/// derivative, from the three bump-moment integrals.
ValueAndDerivative mollified(const RealFunction& f, const RealFunction& omega,
                             double x, const MollifyOptions& options = {});

/// phi_eps(x) = e^{-eps}/(4 kappa) int e^{-eps|x+t|} bump(t) dt and its
/// derivative.
ValueAndDerivative phi(double eps, double x);

/// W_eps(x) = int K_omega(x, t) Omega_rho(x + t) dt for the configured
/// omega and rho.
double smooth_weight(const Weight& w, const SmoothingConfig& cfg, double x);

/// W_eps and W'_eps for a configured omega.
ValueAndDerivative smooth_weight_with_derivative(const Weight& w,
                                                 const SmoothingConfig& cfg,
                                                 double x);

/// W_eps with omega = phi_eps and rho = 1/2, and its analytic derivative.
ValueAndDerivative smooth_weight_phi(const Weight& w, double eps, double x);

struct Corollary1Row {
  double x;
  double w;
  double beta;
  double w_eps;
  double W;
  double dW_analytic;
  double dW_numeric;
  double derivative_bound;
};

struct Corollary1Report {
  std::vector<Corollary1Row> rows;
  BoundReport lower;        // w + e^{-eps|x|} <= W_eps
  BoundReport upper;        // W_eps <= w_eps
  BoundReport derivative;   // |W'_eps| <= 74 e^{eps|x|} w_eps
  BoundReport agreement;    // analytic vs central-difference W'_eps
  bool pass = false;
};

/// Checks the two-sided bound, the derivative bound with constant 74, and
/// the agreement of the analytic derivative with central differences, on
/// every grid point, for omega = phi_eps. The central-difference step is
/// h * phi_eps(x), i.e. h is relative to the local kernel half-width.
Corollary1Report verify_corollary1(const Weight& w, double eps,
                                   std::span<const double> grid,
                                   double h = 2e-4,
                                   double sandwich_tol = 1e-8);

}  // namespace bernstein
