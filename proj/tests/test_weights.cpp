#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "bernstein/errors.hpp"
#include "bernstein/weights.hpp"

using namespace bernstein;

namespace {

Weight squares_weight(int n_max) {
  std::vector<SupportPoint> pts;
  for (int n = n_max; n >= 1; --n) pts.push_back({-double(n) * n, std::exp(-n)});
  for (int n = 1; n <= n_max; ++n) pts.push_back({double(n) * n, std::exp(-n)});
  return Weight::discrete(pts);
}

// Indicator of the open interval (0, 1).
Weight open_unit_indicator() {
  return Weight::evaluable([](double x) { return x > 0.0 && x < 1.0 ? 1.0 : 0.0; }, 1.0,
                           "indicator");
}

}  // namespace

TEST_CASE("eval_weight: worked examples") {
  const Weight d = Weight::discrete({{0.0, 1.0}});
  CHECK(eval_weight(d, 0.0) == 1.0);
  CHECK(eval_weight(d, 0.5) == 0.0);
  CHECK(eval_weight(gauss_weight(), 0.0) == 1.0);
}

TEST_CASE("eval_weight: clamping and NaN") {
  const Weight big = Weight::evaluable([](double x) { return 5.0 * x; }, 2.0, "ramp");
  CHECK(eval_weight(big, 1.0) == 2.0);
  CHECK(eval_weight(big, -1.0) == 0.0);
  const Weight bad = Weight::evaluable([](double) { return std::nan(""); }, 1.0, "nan");
  CHECK_THROWS_AS(eval_weight(bad, 0.0), EvaluationError);
}

TEST_CASE("Weight::discrete validation") {
  CHECK_THROWS_AS(Weight::discrete({{1.0, 1.0}, {0.0, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(Weight::discrete({{1.0, 1.0}, {1.0, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(Weight::discrete({{1.0, 0.0}}), PreconditionError);
  CHECK(Weight::discrete({{1.0, 0.25}, {2.0, 0.5}}).bound() == 0.5);
}

TEST_CASE("upper_baire: worked examples") {
  CHECK(upper_baire(open_unit_indicator(), 0.0) == 1.0);
  for (double x : {-1.3, 0.0, 0.4, 2.2}) {
    CHECK(upper_baire(gauss_weight(), x) == doctest::Approx(std::exp(-x * x)).epsilon(1e-9));
  }
  CHECK(upper_baire(Weight::discrete({{2.0, 0.5}}), 2.0) == 0.5);
}

TEST_CASE("upper_baire: pointwise majorant and idempotence") {
  const Weight step = open_unit_indicator();
  const Weight regularized = Weight::evaluable(
      [&](double y) { return upper_baire(step, y); }, 1.0, "regularized");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  std::vector<double> xs = {-0.5, 0.0, 0.5, 1.0, 1.5};
  for (int i = 0; i < 200; ++i) {
    const double x = u(gen);
    CHECK(upper_baire(step, x) >= eval_weight(step, x));
    // M of M is nested and costly, so only a subsample is checked.
    if (i < 12) xs.push_back(x);
  }
  for (double x : xs) {
    CHECK(upper_baire(regularized, x) == doctest::Approx(upper_baire(step, x)).epsilon(1e-9));
  }
  CHECK(upper_baire(step, 1.0) == 1.0);
  CHECK(upper_baire(step, 1.5) == 0.0);
}

TEST_CASE("upper_baire: continuous weights at 1000 random points") {
  const Weight w = Weight::evaluable([](double x) { return 1.0 / (1.0 + x * x); }, 1.0,
                                     "cauchy");
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen);
    CHECK(std::abs(upper_baire(w, x) - w(x)) <= 1e-9);
  }
}

TEST_CASE("class_check: worked examples") {
  const ClassReport e = class_check(exp_abs_weight(), 5, 200.0);
  CHECK(e.decay_ok_up_to == 5);
  CHECK(e.usc_ok);
  CHECK(e.bounded_ok);
  CHECK(e.support_unbounded_ok);

  const Weight cauchy = Weight::evaluable([](double x) { return 1.0 / (1.0 + x * x); }, 1.0,
                                          "cauchy");
  const ClassReport c = class_check(cauchy, 5, 200.0);
  CHECK(c.decay_ok_up_to <= 1);
  CHECK(c.decay_ok_up_to >= 0);

  const ClassReport d = class_check(squares_weight(30), 4, 900.0);
  CHECK(d.support_unbounded_ok);
  CHECK(d.decay_ok_up_to == 4);
}

TEST_CASE("class_check: counterexamples are diagnosed, not rejected") {
  const ClassReport r = class_check(open_unit_indicator(), 2, 50.0);
  CHECK_FALSE(r.support_unbounded_ok);
  CHECK_FALSE(r.notes.empty());
  CHECK(r.bounded_ok);
}

TEST_CASE("step_weight: worked examples") {
  const Weight c = Weight::evaluable([](double) { return 0.7; }, 1.0, "const");
  const StepWeight sc = step_weight(c, 5);
  for (const StepSegment& s : sc.segments) CHECK(s.value == 0.7);

  const StepWeight sg = step_weight(gauss_weight(), 3);
  for (const StepSegment& s : sg.segments) {
    if (s.n >= 1 && s.n <= 3) {
      CHECK(s.lo == doctest::Approx(std::log(double(s.n + 1))).epsilon(1e-15));
    }
  }

  const Weight one_sided = Weight::evaluable(
      [](double x) { return x >= 0.0 ? std::exp(-x) : 0.0; }, 1.0, "exp_right");
  const StepWeight so = step_weight(one_sided, 2);
  for (const StepSegment& s : so.segments) {
    if (s.n == 1) {
      CHECK(s.lo == doctest::Approx(std::log(2.0)).epsilon(1e-15));
      CHECK(s.hi == doctest::Approx(std::log(3.0)).epsilon(1e-15));
      CHECK(s.value == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("step_weight: majorant on the covered range") {
  const Weight ws[] = {gauss_weight(), exp_abs_weight(), freud_weight(1.5), squares_weight(3)};
  std::mt19937_64 gen(3);
  for (const Weight& w : ws) {
    const StepWeight s = step_weight(w, 40);
    std::uniform_real_distribution<double> u(-std::log(41.0), std::log(41.0));
    int covered = 0;
    for (int i = 0; i < 2000; ++i) {
      const double x = u(gen);
      if (!s.covers(x)) continue;
      ++covered;
      CHECK(s(x) >= w(x));
    }
    CHECK(covered > 1000);
    // Support points of a discrete weight are majorized exactly.
    for (const SupportPoint& p : w.points()) {
      if (s.covers(p.x)) CHECK(s(p.x) >= p.value);
    }
  }
}

TEST_CASE("step_weight: breakpoints are bit-reproducible") {
  const StepWeight s = step_weight(gauss_weight(), 50);
  const StepWeight again = step_weight(gauss_weight(), 50);
  REQUIRE(s.segments.size() == again.segments.size());
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    CHECK(s.segments[i].lo == again.segments[i].lo);
    CHECK(s.segments[i].hi == again.segments[i].hi);
    const double n = std::abs(double(s.segments[i].n));
    CHECK(std::abs(s.segments[i].lo) == doctest::Approx(std::log(n + 1.0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(step_weight(gauss_weight(), 0), PreconditionError);
}
