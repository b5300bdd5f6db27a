#include "bernstein/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "bernstein/errors.hpp"
#include "bernstein/numerics.hpp"

namespace bernstein {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converged:
      return "converged";
    case Verdict::diverging:
      return "diverging";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(Selector s) {
  switch (s) {
    case Selector::all:
      return "all";
    case Selector::every_other:
      return "every_other";
    case Selector::positive_only:
      return "positive_only";
  }
  return "all";
}

Selector parse_selector(const std::string& name) {
  if (name == "all") return Selector::all;
  if (name == "every_other") return Selector::every_other;
  if (name == "positive_only") return Selector::positive_only;
  throw InputError("unknown zero-subset selector '" + name +
                   "' (expected all, every_other or positive_only)");
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Zeros ordered by |l|, negative first on ties.
std::vector<double> by_magnitude(std::span<const double> zeros) {
  std::vector<double> order(zeros.begin(), zeros.end());
  std::stable_sort(order.begin(), order.end(), [](double a, double b) {
    const double fa = std::abs(a);
    const double fb = std::abs(b);
    return fa < fb || (fa == fb && a < b);
  });
  return order;
}

// Slope s of log(term) = c - s log(index) over indices in [n/10, n].
double decay_exponent(const std::vector<double>& terms, std::size_t min_terms) {
  const std::size_t n = terms.size();
  const std::size_t first = std::max<std::size_t>(1, n / 10);
  if (n < min_terms || n - first + 1 < min_terms) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double count = 0.0;
  for (std::size_t i = first; i <= n; ++i) {
    const double x = std::log(double(i));
    const double y = std::log(terms[i - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    count += 1.0;
  }
  const double denom = count * sxx - sx * sx;
  if (!(denom > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return -(count * sxy - sx * sy) / denom;
}

void assign_verdict(CriterionReport& r, bool truncated,
                    const VerdictThresholds& t) {
  const std::size_t n = r.terms.size();
  r.tail_indicator = n ? r.terms.back() : 0.0;
  if (n > 0) {
    const std::size_t back = std::min<std::size_t>(10, n);
    const double before = n > back ? r.partial_sums[n - back - 1] : 0.0;
    r.growth = r.sum > 0.0 ? (r.sum - before) / r.sum : 0.0;
  }
  r.decay_exponent = decay_exponent(r.terms, t.min_fit_terms);

  if (!truncated) {
    r.verdict = Verdict::converged;
    r.note = "finite truncation - all partial sums converge";
    return;
  }
  const bool strict = r.tail_indicator < t.tail_rel * (r.sum + 1.0) &&
                      r.growth < t.growth_rel;
  const double s = r.decay_exponent;
  if (strict || (!std::isnan(s) && s >= t.converged_exponent)) {
    r.verdict = Verdict::converged;
  } else if (!std::isnan(s) && s <= t.diverging_exponent) {
    r.verdict = Verdict::diverging;
  } else {
    r.verdict = Verdict::inconclusive;
  }
  r.note = strict ? "tail and growth below thresholds"
                  : (std::isnan(s) ? "too few terms to fit a decay rate"
                                   : "decay exponent " + fmt(s));
}

}  // namespace

CriterionReport debranges_sum(const Weight& w, const EntireProduct& B, int k,
                              const VerdictThresholds& thresholds) {
  if (k < 0) throw PreconditionError("debranges_sum: k must be >= 0");
  CriterionReport r;
  r.k = k;
  CompensatedSum sum;
  for (double lambda : by_magnitude(B.zeros())) {
    const double weight = w(lambda);
    if (!(weight > 0.0)) {
      throw SupportViolation("debranges_sum: zero " + fmt(lambda) +
                                 " lies outside the support of the weight",
                             lambda);
    }
    const double log_term = -k * std::log1p(lambda * lambda) -
                            std::log(weight) -
                            derivative_at_zero_log(B, lambda).log_abs;
    const double term = std::exp(log_term);
    sum += term;
    r.lambdas.push_back(lambda);
    r.terms.push_back(term);
    r.partial_sums.push_back(sum.value());
  }
  r.sum = sum.value();
  assign_verdict(r, B.zero_set().truncated(), thresholds);
  return r;
}

SingularProfile singular_profile(const Weight& w, const EntireProduct& E,
                                 int k_max,
                                 const VerdictThresholds& thresholds) {
  if (!w.is_discrete()) {
    throw DomainError("singular_profile: the weight must be discrete");
  }
  if (k_max < 1) throw PreconditionError("singular_profile: k_max must be >= 1");
  SingularProfile profile;
  for (int k = 0; k <= k_max; ++k) {
    profile.reports.push_back(debranges_sum(w, E, k, thresholds));
  }
  for (int n = 0; n < k_max; ++n) {
    if (profile.reports[n].verdict == Verdict::diverging &&
        profile.reports[n + 1].verdict == Verdict::converged) {
      profile.n_estimate = n;
      break;
    }
  }
  if (!E.zero_set().truncated()) {
    profile.note = "finite truncation - all partial sums converge";
  } else if (!profile.n_estimate) {
    profile.note = "no diverging-to-converged transition observed";
  }
  return profile;
}

std::vector<FamilyReport> subproduct_sums(
    const Weight& w, const EntireProduct& E,
    const std::vector<Selector>& families,
    const VerdictThresholds& thresholds) {
  const auto zeros = E.zeros();
  std::vector<FamilyReport> out;
  for (Selector selector : families) {
    FamilyReport f;
    f.selector = selector;
    std::vector<bool> keep(zeros.size(), false);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      switch (selector) {
        case Selector::all:
          keep[i] = true;
          break;
        case Selector::every_other:
          keep[i] = i % 2 == 0;
          break;
        case Selector::positive_only:
          keep[i] = zeros[i] > 0.0;
          break;
      }
      if (keep[i]) f.kept.push_back(zeros[i]);
    }
    if (f.kept.size() < 2) {
      throw DegenerateFamily(std::string("subproduct_sums: selector '") +
                             to_string(selector) + "' keeps " +
                             std::to_string(f.kept.size()) + " zeros");
    }
    f.one_sided = f.kept.front() > 0.0 || f.kept.back() < 0.0;
    f.below_half = 2 * f.kept.size() < zeros.size();

    const EntireProduct F(
        ZeroSet(f.kept, E.zero_set().note() + ", " + to_string(selector),
                E.zero_set().truncated()),
        E.a0());
    f.report = debranges_sum(w, F, 0, thresholds);

    f.factor_dropping =
        make_bound_report("|F'(l)| <= |E'(l)| where dropped factors exceed 1",
                          1e-12, true);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (!keep[i]) continue;
      const double lambda = zeros[i];
      const double log_e = derivative_at_zero_log(E, lambda).log_abs;
      const double log_f = derivative_at_zero_log(F, lambda).log_abs;
      f.factor_ratio.push_back(std::exp(log_f - log_e));
      bool all_exceed = true;
      for (std::size_t j = 0; j < zeros.size() && all_exceed; ++j) {
        if (!keep[j]) all_exceed = std::abs(1.0 - lambda / zeros[j]) > 1.0;
      }
      if (all_exceed) {
        f.factor_dropping.add(lambda, std::exp(log_f - log_e), 1.0);
      }
    }
    if (f.factor_dropping.grid.empty()) f.factor_dropping.pass = true;

    std::ostringstream note;
    note << "only this family is checked; the statement over all sub-products "
            "is not decided";
    if (f.one_sided) note << "; one-sided family";
    if (f.below_half) note << "; keeps fewer than half of the zeros";
    f.note = note.str();
    out.push_back(std::move(f));
  }
  return out;
}

TruncationComparison compare_truncations(const CriterionReport& smaller,
                                         const CriterionReport& larger) {
  std::map<double, double> large_terms;
  for (std::size_t i = 0; i < larger.lambdas.size(); ++i) {
    large_terms[larger.lambdas[i]] = larger.terms[i];
  }
  TruncationComparison c{0, 0.0, std::numeric_limits<double>::quiet_NaN()};
  for (std::size_t i = 0; i < smaller.lambdas.size(); ++i) {
    auto it = large_terms.find(smaller.lambdas[i]);
    if (it == large_terms.end()) continue;
    ++c.common_terms;
    const double change = std::abs(it->second / smaller.terms[i] - 1.0);
    if (!(change <= c.max_relative_change)) {
      c.max_relative_change = change;
      c.at_lambda = smaller.lambdas[i];
    }
  }
  return c;
}

}  // namespace bernstein
