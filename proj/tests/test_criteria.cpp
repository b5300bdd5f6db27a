#include "doctest.h"

#include <cmath>
#include <vector>

#include "bernstein/criteria.hpp"
#include "bernstein/errors.hpp"

using namespace bernstein;

namespace {

Weight on_zeros(const ZeroSet& zs, const std::function<double(double)>& value) {
  std::vector<SupportPoint> pts;
  for (double l : zs.zeros()) pts.push_back({l, value(l)});
  return Weight::discrete(pts);
}

// w(l) = 1 / ((1 + l^2) |E'(l)|), so the k-th term is (1 + l^2)^{1-k}.
Weight profile_weight(const EntireProduct& E) {
  return on_zeros(E.zero_set(), [&](double l) {
    return 1.0 / ((1.0 + l * l) * std::abs(derivative_at_zero(E, l)));
  });
}

}  // namespace

TEST_CASE("debranges_sum: two-point examples") {
  const EntireProduct B(ZeroSet({-1.0, 1.0}));
  const Weight half = Weight::discrete({{-1.0, 0.5}, {1.0, 0.5}});
  const CriterionReport r0 = debranges_sum(half, B, 0);
  CHECK(r0.sum == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r0.verdict == Verdict::converged);
  CHECK(r0.partial_sums.size() == 2);
  const CriterionReport r1 = debranges_sum(half, B, 1);
  CHECK(r1.sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r1.verdict == Verdict::converged);
  CHECK_THROWS_AS(debranges_sum(half, B, -1), PreconditionError);
}

TEST_CASE("debranges_sum: support violation names the zero") {
  const EntireProduct B(ZeroSet({-1.0, 1.0, 2.0}));
  const Weight w = Weight::discrete({{-1.0, 0.5}, {1.0, 0.5}});
  CHECK_THROWS_AS(debranges_sum(w, B, 0), SupportViolation);
  try {
    debranges_sum(w, B, 0);
  } catch (const SupportViolation& e) {
    CHECK(std::string(e.what()).find('2') != std::string::npos);
  }
}

TEST_CASE("debranges_sum: positivity, ordering and monotonicity in k") {
  const EntireProduct B(ZeroSet::n_squared(40));
  const Weight w = on_zeros(B.zero_set(), [](double l) { return std::exp(-std::sqrt(std::abs(l))); });
  CriterionReport prev = debranges_sum(w, B, 0);
  for (int k = 0; k <= 3; ++k) {
    const CriterionReport r = debranges_sum(w, B, k);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      CHECK(r.terms[i] > 0.0);
      if (i > 0) {
        // Strict growth can stall once a term drops below one ulp of the sum.
        CHECK(r.partial_sums[i] >= r.partial_sums[i - 1]);
        CHECK(std::abs(r.lambdas[i]) >= std::abs(r.lambdas[i - 1]));
      }
      if (k > 0) CHECK(r.partial_sums[i] <= prev.partial_sums[i]);
    }
    CHECK(r.tail_indicator == r.terms.back());
    prev = r;
  }
}

TEST_CASE("debranges_sum: constant weight reproduces theta") {
  for (const EntireProduct& B : {EntireProduct(ZeroSet::n_squared(30), 1.5),
                                 EntireProduct(ZeroSet::lacunary_2n(20))}) {
    const Weight w = on_zeros(B.zero_set(), [](double) { return 0.25; });
    const CriterionReport r = debranges_sum(w, B, 0);
    CHECK(r.sum == doctest::Approx(theta(B).value / 0.25).epsilon(1e-12));
  }
}

TEST_CASE("debranges_sum: two truncations agree on common terms") {
  const EntireProduct small(ZeroSet::n_squared(40));
  const EntireProduct large(ZeroSet::n_squared(80));
  auto w_of = [](const EntireProduct& B) {
    return on_zeros(B.zero_set(), [](double l) { return std::exp(-std::sqrt(std::abs(l))); });
  };
  const CriterionReport a = debranges_sum(w_of(small), small, 0);
  const CriterionReport b = debranges_sum(w_of(large), large, 0);
  const TruncationComparison c = compare_truncations(a, b);
  CHECK(c.common_terms == 80);
  CHECK(std::isfinite(c.max_relative_change));
  // The extra factors prod (1 - l^2/m^2) change each common term by a
  // bounded factor; the largest change sits at the edge of the small set.
  CHECK(std::abs(c.at_lambda) >= 1.0);
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const double l = a.lambdas[i];
    double factor = 1.0;
    for (int m = 41; m <= 80; ++m) factor *= std::abs(1.0 - l * l / (double(m) * m * m * m));
    CHECK(b.terms[i] == doctest::Approx(a.terms[i] / factor).epsilon(1e-10));
  }
}

TEST_CASE("singular_profile: constructed transition at n = 1") {
  const EntireProduct E(ZeroSet::n_squared(40));
  const SingularProfile p = singular_profile(profile_weight(E), E, 3);
  REQUIRE(p.reports.size() == 4);
  for (double t : p.reports[1].terms) CHECK(t == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < p.reports[2].terms.size(); ++i) {
    const double l = p.reports[2].lambdas[i];
    CHECK(p.reports[2].terms[i] == doctest::Approx(1.0 / (1.0 + l * l)).epsilon(1e-12));
  }
  CHECK(p.reports[0].verdict == Verdict::diverging);
  CHECK(p.reports[1].verdict == Verdict::diverging);
  CHECK(p.reports[2].verdict == Verdict::converged);
  REQUIRE(p.n_estimate.has_value());
  CHECK(*p.n_estimate == 1);
}

TEST_CASE("singular_profile: finite sets and guards") {
  const EntireProduct B(ZeroSet({-2.0, -1.0, 1.0, 3.0}));
  const Weight w = on_zeros(B.zero_set(), [](double) { return 1.0; });
  const SingularProfile p = singular_profile(w, B, 2);
  CHECK_FALSE(p.n_estimate.has_value());
  CHECK(p.note.find("finite truncation") != std::string::npos);
  for (const CriterionReport& r : p.reports) CHECK(r.verdict == Verdict::converged);
  CHECK_THROWS_AS(singular_profile(w, B, 0), PreconditionError);
  CHECK_THROWS_AS(singular_profile(gauss_weight(), B, 2), DomainError);
}

TEST_CASE("subproduct_sums: families") {
  const EntireProduct E(ZeroSet::n_squared(40));
  const Weight w = on_zeros(E.zero_set(), [](double l) { return std::exp(-std::sqrt(std::abs(l))); });
  const std::vector<FamilyReport> fs = subproduct_sums(
      w, E, {Selector::all, Selector::every_other, Selector::positive_only});
  REQUIRE(fs.size() == 3);

  const CriterionReport direct = debranges_sum(w, E, 0);
  REQUIRE(fs[0].report.terms.size() == direct.terms.size());
  for (std::size_t i = 0; i < direct.terms.size(); ++i) {
    CHECK(fs[0].report.terms[i] == doctest::Approx(direct.terms[i]).epsilon(1e-14));
  }
  CHECK(fs[1].kept.size() == 40);
  CHECK(fs[1].factor_dropping.pass);
  CHECK(fs[2].one_sided);
  CHECK(fs[2].note.find("one-sided family") != std::string::npos);
  for (const FamilyReport& f : fs) {
    CHECK(f.note.find("only this family is checked") != std::string::npos);
  }

  const EntireProduct L(ZeroSet::lacunary_2n(20));
  const Weight wl = on_zeros(L.zero_set(), [](double) { return 1.0; });
  // Dropping the negative zeros leaves factors 1 + l/|mu| > 1 at every kept zero.
  const FamilyReport lac = subproduct_sums(wl, L, {Selector::positive_only})[0];
  CHECK(lac.factor_dropping.pass);
  CHECK(lac.factor_dropping.lhs.size() == lac.kept.size());
  for (double r : lac.factor_ratio) CHECK(r <= 1.0);

  const EntireProduct tiny(ZeroSet({-1.0, 1.0}));
  const Weight wt = on_zeros(tiny.zero_set(), [](double) { return 1.0; });
  CHECK_THROWS_AS(subproduct_sums(wt, tiny, {Selector::every_other}), DegenerateFamily);
}

TEST_CASE("Selector parsing") {
  CHECK(parse_selector("all") == Selector::all);
  CHECK(parse_selector("every_other") == Selector::every_other);
  CHECK(parse_selector("positive_only") == Selector::positive_only);
  CHECK_THROWS_AS(parse_selector("odd"), InputError);
  CHECK(std::string(to_string(Verdict::inconclusive)) == "inconclusive");
}
