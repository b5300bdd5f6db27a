#include "bernstein/numerics.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

#include "bernstein/errors.hpp"

namespace bernstein {

namespace {

// Kronrod 21-point abscissae on [-1, 1] (non-negative half, center first).
// Odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.0,
    1.48874338981631210884826001129719984617564859420691695707989253515903617e-01,
    2.94392862701460198131126603103865566162666625156957918648882291727246112e-01,
    4.33395394129247190799265943165784162200071837656246496502701513143766989e-01,
    5.62757134668604683339000099272694140843013881941966958860346214587792664e-01,
    6.79409568299024406234327365114873575769294711834809467664817188952558575e-01,
    7.80817726586416897063717578345042377163407520298157179746948599995056080e-01,
    8.65063366688984510732096688423493048527543014965330452521959731845374755e-01,
    9.30157491355708226001207180059508346225167909981939242303494068668284160e-01,
    9.73906528517171720077964012084452053428269946692382119231212066696595203e-01,
    9.95657163025808080735527280689002847921260587219478924363379161117570230e-01,
};

constexpr std::array<double, 11> kKronrodWeights = {
    1.49445554002916905664936468389821203745236316687472803835608518736989645e-01,
    1.47739104901338491374841515972068045523731625485206604518191954398859930e-01,
    1.42775938577060080797094273138717060885979056531905555607410047439707704e-01,
    1.34709217311473325928054001771706832760991913008559714066366684913202914e-01,
    1.23491976262065851077958109831074159512300349528648327644679941209740542e-01,
    1.09387158802297641899210590325804960271813299834345220078196758298265504e-01,
    9.31254545836976055350654650833663443900188288807600319700850387601777357e-02,
    7.50396748109199527670431409161900093952193820009100881736970480484304043e-02,
    5.47558965743519960313813002445801763737211140583335575244326158047840989e-02,
    3.25581623079647274788189724593897606174290083071082398729787604693516541e-02,
    1.16946388673718742780643960621920483962856348064208640591780787163898627e-02,
};

// Gauss 10-point weights for nodes kKronrodNodes[1], [3], ..., [9].
constexpr std::array<double, 5> kGaussWeights = {
    2.95524224714752870173892994651338329421046717026853601354308029755995938e-01,
    2.69266719309996355091226921569469352859759938460883795800563276242153432e-01,
    2.19086362515982043995534934228163192458771870522677089880956543635199911e-01,
    1.49451349150580593145776339657697332402556639669427367835477268753238655e-01,
    6.66713443086881375935688098933317928578648343201581451286948816134120641e-02,
};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    return lhs.error < rhs.error;
  }
};

double checked(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw EvaluationError(
        "integrand returned a non-finite value at x = " + std::to_string(x),
        x);
  }
  return y;
}

Panel kronrod21(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kKronrodWeights[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < kKronrodNodes.size(); ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * pair;
    }
  }
  return {a, b, kronrod * half, std::abs(kronrod - gauss) * half};
}

constexpr std::size_t kPanelEvaluations = 21;

bool splittable(const Panel& p) {
  const double mid = 0.5 * (p.a + p.b);
  const double scale = std::max(std::abs(p.a), std::abs(p.b));
  return mid > p.a && mid < p.b &&
         (p.b - p.a) > 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

std::size_t default_evaluation_budget() {
  static const std::size_t budget = [] {
    constexpr std::size_t kDefault = 1'000'000;
    const char* env = std::getenv("BERNSTEIN_BUDGET");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || parsed == 0) return kDefault;
    return static_cast<std::size_t>(parsed);
  }();
  return budget;
}

QuadratureResult integrate_bump(const RealFunction& f, double a, double b,
                                double tol) {
  return integrate_bump(f, a, b, tol, QuadratureOptions{});
}

QuadratureResult integrate_bump(const RealFunction& f, double a, double b,
                                double tol, const QuadratureOptions& options) {
  if (!(a < b)) throw DomainError("integrate_bump: requires a < b");
  if (!(tol > 0.0)) throw DomainError("integrate_bump: requires tol > 0");

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double p : options.breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::size_t evaluations = 0;
  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> frozen;
  double total_value = 0.0;
  double total_error = 0.0;

  auto budget_error = [&](const char* why) {
    return BudgetExhausted(std::string("integrate_bump: ") + why, total_value,
                           total_error, evaluations);
  };
  auto evaluate = [&](double lo, double hi) {
    if (evaluations + kPanelEvaluations > options.budget) {
      throw budget_error("evaluation budget exhausted");
    }
    evaluations += kPanelEvaluations;
    return kronrod21(f, lo, hi);
  };
  auto admit = [&](const Panel& p) {
    total_value += p.value;
    total_error += p.error;
    if (splittable(p)) {
      active.push(p);
    } else {
      frozen.push_back(p);
    }
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    admit(evaluate(cuts[i], cuts[i + 1]));
  }

  auto recompute = [&] {
    CompensatedSum value;
    CompensatedSum error;
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    for (const Panel& p : frozen) {
      value += p.value;
      error += p.error;
    }
    total_value = value.value();
    total_error = error.value();
  };

  std::size_t since_recompute = 0;
  while (true) {
    if (total_error <= tol || ++since_recompute >= 256) {
      recompute();
      since_recompute = 0;
      if (total_error <= tol) break;
    }
    if (active.empty()) {
      throw budget_error("panels cannot be refined further");
    }
    const Panel worst = active.top();
    active.pop();
    total_value -= worst.value;
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    admit(evaluate(worst.a, mid));
    admit(evaluate(mid, worst.b));
  }

  return {total_value, total_error, evaluations};
}

GridSupResult grid_sup(const RealFunction& f, double lo, double hi,
                       double tol) {
  if (lo > hi) throw DomainError("grid_sup: empty interval (lo > hi)");
  if (!(tol > 0.0)) throw DomainError("grid_sup: requires tol > 0");

  auto eval = [&](double x) {
    const double y = f(x);
    if (std::isnan(y)) {
      throw EvaluationError("grid_sup: function returned NaN", x);
    }
    return y;
  };

  if (lo == hi) return {eval(lo), lo, 1, 0};

  constexpr int kInitialCells = 256;
  constexpr int kMaxLevels = 20;
  constexpr std::size_t kLeaders = 4;
  constexpr int kStallLevels = 3;

  struct Sample {
    double x;
    double y;
  };
  std::vector<Sample> samples;
  samples.reserve(kInitialCells + 1 + 2 * kLeaders * kMaxLevels);
  double h = (hi - lo) / kInitialCells;
  for (int i = 0; i <= kInitialCells; ++i) {
    const double x = (i == kInitialCells) ? hi : lo + i * h;
    samples.push_back({x, eval(x)});
  }

  auto best_of = [&] {
    return *std::max_element(
        samples.begin(), samples.end(),
        [](const Sample& l, const Sample& r) { return l.y < r.y; });
  };

  Sample best = best_of();
  std::size_t levels = 0;
  int stalls = 0;
  std::vector<std::size_t> order(samples.size());
  std::vector<double> fresh;
  for (int level = 1; level <= kMaxLevels; ++level) {
    h *= 0.5;
    if (h <= 4.0 * std::numeric_limits<double>::epsilon() *
                 std::max(1.0, std::abs(best.x))) {
      break;
    }
    order.resize(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t lead = std::min(kLeaders, order.size());
    std::partial_sort(order.begin(), order.begin() + lead, order.end(),
                      [&](std::size_t l, std::size_t r) {
                        return samples[l].y > samples[r].y;
                      });
    fresh.clear();
    for (std::size_t k = 0; k < lead; ++k) {
      const double p = samples[order[k]].x;
      for (double x : {p - h, p + h}) {
        if (x < lo || x > hi) continue;
        if (std::find(fresh.begin(), fresh.end(), x) != fresh.end()) continue;
        fresh.push_back(x);
      }
    }
    for (double x : fresh) samples.push_back({x, eval(x)});
    ++levels;
    const Sample next = best_of();
    const double change = next.y - best.y;
    best = next;
    stalls = (change < tol) ? stalls + 1 : 0;
    if (stalls >= kStallLevels) break;
  }
  return {best.y, best.x, samples.size(), levels};
}

double central_diff(const RealFunction& f, double x, double h) {
  if (!(h > 0.0)) throw DomainError("central_diff: requires h > 0");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace bernstein
