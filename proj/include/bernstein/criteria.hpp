#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bernstein/bound_report.hpp"
#include "bernstein/entire.hpp"
#include "bernstein/weights.hpp"

namespace bernstein {

enum class Verdict { converged, diverging, inconclusive };

const char* to_string(Verdict v);

/// Partial sums of 1 / ((1 + l^2)^k w(l) |B'(l)|) in increasing |l|.
struct CriterionReport {
  int k = 0;
  std::vector<double> lambdas;
  std::vector<double> terms;
  std::vector<double> partial_sums;
  double sum = 0.0;
  /// Magnitude of the last term.
  double tail_indicator = 0.0;
  /// Relative growth of the partial sums over the last ten terms.
  double growth = 0.0;
  /// Least-squares slope s in term ~ index^{-s} over the last decade of
  /// indices; NaN when there are too few terms.
  double decay_exponent = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

/// Verdict rules. A set that is not marked truncated is a genuinely finite
/// sum and always converges. For truncations: converged when the last term is
/// below 1e-10 (sum + 1) and the last ten terms grew the sum by less than
/// 1e-6 relative, or when the terms decay at least like index^{-2};
/// diverging when they decay no faster than index^{-1}; inconclusive
/// otherwise.
struct VerdictThresholds {
  double tail_rel = 1e-10;
  double growth_rel = 1e-6;
  double converged_exponent = 2.0;
  double diverging_exponent = 1.0;
  std::size_t min_fit_terms = 10;
};

/// Throws SupportViolation naming the zero when w(l) = 0, PreconditionError
/// for k < 0.
CriterionReport debranges_sum(const Weight& w, const EntireProduct& B, int k,
                              const VerdictThresholds& thresholds = {});

struct SingularProfile {
  std::vector<CriterionReport> reports;  // k = 0..k_max
  /// Smallest n with diverging at n and converged at n + 1.
  std::optional<int> n_estimate;
  std::string note;
};

/// Throws DomainError for a non-discrete weight, PreconditionError for
/// k_max < 1.
SingularProfile singular_profile(const Weight& w, const EntireProduct& E,
                                 int k_max,
                                 const VerdictThresholds& thresholds = {});

enum class Selector { all, every_other, positive_only };

const char* to_string(Selector s);
/// Parses "all", "every_other", "positive_only"; throws InputError.
Selector parse_selector(const std::string& name);

struct FamilyReport {
  Selector selector;
  /// The product over the kept zeros, with E's value at the origin.
  std::vector<double> kept;
  CriterionReport report;
  /// |F'(l)| / |E'(l)| at every kept zero.
  std::vector<double> factor_ratio;
  /// |F'(l)| <= |E'(l)| at the kept zeros where every dropped factor has
  /// |1 - l/mu| > 1.
  BoundReport factor_dropping;
  bool one_sided = false;
  /// The selector kept fewer than half of the zeros.
  bool below_half = false;
  std::string note;
};

/// The criterion sum (k = 0) for sub-products F of E. Only the supplied
/// families are checked. Throws DegenerateFamily when a selector keeps
/// fewer than two zeros.
std::vector<FamilyReport> subproduct_sums(
    const Weight& w, const EntireProduct& E,
    const std::vector<Selector>& families,
    const VerdictThresholds& thresholds = {});

struct TruncationComparison {
  std::size_t common_terms;
  /// max over common zeros of |term_large / term_small - 1|.
  double max_relative_change;
  double at_lambda;
};

/// Per-term change between two truncations of the same family, over the
/// zeros present in both reports (same k).
TruncationComparison compare_truncations(const CriterionReport& smaller,
                                         const CriterionReport& larger);

}  // namespace bernstein
