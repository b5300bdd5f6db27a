#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bernstein/errors.hpp"
#include "bernstein/numerics.hpp"

using namespace bernstein;

namespace {

double flat_bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / ((1.0 - t) * (1.0 + t)));
}

}  // namespace

TEST_CASE("integrate_bump: constant integrand") {
  const QuadratureResult r = integrate_bump([](double) { return 1.0; }, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate <= 1e-12);
  CHECK(r.evaluations >= 1);
}

TEST_CASE("integrate_bump: abs moment equals 2/e") {
  auto f = [](double t) {
    const double q = (1.0 - t) * (1.0 + t);
    return flat_bump(t) == 0.0 ? 0.0 : flat_bump(t) * 2.0 * std::abs(t) / (q * q);
  };
  QuadratureOptions split;
  split.breakpoints = {0.0};
  const QuadratureResult r = integrate_bump(f, -1.0, 1.0, 1e-13, split);
  CHECK(std::abs(r.value - 2.0 / std::numbers::e) <= 1e-8);
}

TEST_CASE("integrate_bump: bump integral against an independent tanh-sinh oracle") {
  boost::math::quadrature::tanh_sinh<double> oracle;
  const double expected = oracle.integrate(flat_bump, -1.0, 1.0);
  const QuadratureResult r = integrate_bump(flat_bump, -1.0, 1.0, 1e-14);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-13));
  CHECK(r.value == doctest::Approx(0.44399).epsilon(5e-4 / 0.44399));
}

TEST_CASE("integrate_bump: endpoints are never sampled") {
  bool touched = false;
  auto f = [&](double t) {
    if (t == -1.0 || t == 1.0) touched = true;
    return flat_bump(t);
  };
  integrate_bump(f, -1.0, 1.0, 1e-12);
  CHECK_FALSE(touched);
}

TEST_CASE("integrate_bump: additivity within combined error estimates") {
  auto f = [](double t) { return std::exp(-t * t) * std::cos(3.0 * t); };
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 25; ++i) {
    double p[3] = {u(gen), u(gen), u(gen)};
    std::sort(p, p + 3);
    if (p[1] - p[0] < 1e-6 || p[2] - p[1] < 1e-6) continue;
    const auto ac = integrate_bump(f, p[0], p[2], 1e-12);
    const auto ab = integrate_bump(f, p[0], p[1], 1e-12);
    const auto bc = integrate_bump(f, p[1], p[2], 1e-12);
    const double slack = ac.error_estimate + ab.error_estimate + bc.error_estimate + 1e-14;
    CHECK(std::abs(ac.value - ab.value - bc.value) <= slack);
  }
}

TEST_CASE("integrate_bump: odd integrand on a symmetric interval") {
  auto f = [](double t) { return t * t * t * std::exp(-t * t) + std::sin(t); };
  const auto r = integrate_bump(f, -2.0, 2.0, 1e-12);
  CHECK(std::abs(r.value) <= 1e-12);
}

TEST_CASE("integrate_bump: errors") {
  CHECK_THROWS_AS(integrate_bump([](double) { return std::nan(""); }, 0.0, 1.0, 1e-10),
                  EvaluationError);
  QuadratureOptions tiny;
  tiny.budget = 50;
  try {
    integrate_bump([](double t) { return std::sqrt(std::abs(t - 0.3)); }, 0.0, 1.0,
                   1e-15, tiny);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.evaluations() <= 50);
  }
  CHECK_THROWS_AS(integrate_bump([](double) { return 1.0; }, 1.0, 0.0, 1e-10),
                  DomainError);
  CHECK_THROWS_AS(integrate_bump([](double) { return 1.0; }, 0.0, 1.0, 0.0),
                  DomainError);
}

TEST_CASE("grid_sup: worked examples") {
  const auto c = grid_sup([](double) { return 3.0; }, 0.0, 1.0, 1e-12);
  CHECK(c.sup_value == 3.0);

  const auto e = grid_sup([](double t) { return std::exp(-std::abs(t)); }, -1.0, 1.0, 1e-12);
  CHECK(e.sup_value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.arg == doctest::Approx(0.0).epsilon(1e-12));

  const auto p = grid_sup([](double t) { return -(t - 0.3) * (t - 0.3); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(p.sup_value) <= 1e-10);
  CHECK(p.arg == doctest::Approx(0.3).epsilon(1e-4));
  CHECK(p.arg >= 0.0);
  CHECK(p.arg <= 1.0);
}

TEST_CASE("grid_sup: domain error and degenerate interval") {
  CHECK_THROWS_AS(grid_sup([](double) { return 0.0; }, 1.0, 0.0, 1e-9), DomainError);
  const auto r = grid_sup([](double t) { return t; }, 2.0, 2.0, 1e-9);
  CHECK(r.sup_value == 2.0);
  CHECK(r.arg == 2.0);
}

TEST_CASE("grid_sup: never below 1000 random samples") {
  auto f = [](double t) { return std::sin(7.0 * t) * std::exp(-0.1 * t * t) + 0.3 * std::cos(31.0 * t); };
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::uniform_real_distribution<double> ends(-5.0, 5.0);
    double lo = ends(gen), hi = ends(gen);
    if (lo > hi) std::swap(lo, hi);
    const auto r = grid_sup(f, lo, hi, 1e-10);
    CHECK(r.arg >= lo);
    CHECK(r.arg <= hi);
    std::uniform_real_distribution<double> u(lo, hi);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, f(u(gen)));
    CHECK(r.sup_value >= worst - 1e-10);
  }
}

TEST_CASE("central_diff") {
  CHECK(central_diff([](double t) { return t * t; }, 1.0, 1e-5) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(central_diff([](double) { return 4.0; }, 3.0, 1e-3) == 0.0);
  CHECK(std::abs(central_diff([](double t) { return std::exp(t); }, 0.0, 1e-5) - 1.0) <= 1e-10);
  // Quadratics are exact up to rounding.
  auto q = [](double t) { return 3.0 * t * t - 2.0 * t + 5.0; };
  for (double x : {-2.0, 0.0, 0.5, 4.0}) {
    CHECK(central_diff(q, x, 1e-3) == doctest::Approx(6.0 * x - 2.0).epsilon(1e-9));
  }
}

TEST_CASE("CompensatedSum keeps small terms") {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s += -1.0;
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));
}

TEST_CASE("Rng: documented mt19937_64/u53 mapping") {
  Rng rng(42);
  std::mt19937_64 reference(42);
  for (int i = 0; i < 100; ++i) {
    const double expected = double(reference() >> 11) / 9007199254740992.0;
    CHECK(rng.uniform() == expected);
  }
  Rng a(3), b(3);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform(-2.0, 5.0) == b.uniform(-2.0, 5.0));
}
