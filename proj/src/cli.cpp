#include "bernstein/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bernstein/criteria.hpp"
#include "bernstein/entire.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/io.hpp"
#include "bernstein/numerics.hpp"
#include "bernstein/smoothing.hpp"
#include "bernstein/weights.hpp"

namespace bernstein {

namespace {

struct Options {
  std::string weight_path;
  std::string zeros_path;
  double eps = 0.5;
  double delta = 0.5;
  double rho = 0.5;
  std::string grid;
  int k = 0;
  std::optional<int> k_max;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string report_path;
  std::optional<double> tol;
  std::string shifts = "random";
  std::string omega = "default";
  std::string families;
  int n_range = 10;
};

// Writes either to the --out file or to the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(const Json& doc, const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  sink.get() << doc.dump(2) << '\n';
}

Weight load_weight(const Options& o) {
  if (o.weight_path.empty()) return zero_weight();
  return weight_from_json(read_json_file(o.weight_path));
}

EntireProduct load_product(const Options& o) {
  if (o.zeros_path.empty()) throw InputError("--zeros FILE is required");
  return product_from_json(read_json_file(o.zeros_path));
}

std::vector<double> grid_or(const Options& o, const std::string& fallback) {
  return parse_grid(o.grid.empty() ? fallback : o.grid).values();
}

int cmd_smooth(const Options& o, std::ostream& out) {
  const Weight w = load_weight(o);
  const auto xs = grid_or(o, "-10:10:201");
  const bool use_phi = o.omega == "phi";
  if (!use_phi && o.omega != "default") {
    throw InputError("--omega must be 'default' or 'phi'");
  }
  SmoothingConfig cfg = SmoothingConfig::with_default_omega(o.eps, o.rho);

  Sink sink(o.out_path, out);
  CsvWriter csv(sink.get(), {"x", "w", "beta", "omega_rho", "w_eps", "W", "dW"},
                {{"command", "smooth"},
                 {"eps", format_double(o.eps)},
                 {"rho", use_phi ? "0.5" : format_double(o.rho)},
                 {"omega", use_phi ? "phi_eps" : "exp(-x^2-eps^2/4)/4"},
                 {"weight", w.name()}});
  for (double x : xs) {
    const ValueAndDerivative W = use_phi
                                     ? smooth_weight_phi(w, o.eps, x)
                                     : smooth_weight_with_derivative(w, cfg, x);
    csv.row({x, w(x), beta(w, o.eps, x),
             omega_rho(w, o.eps, use_phi ? 0.5 : o.rho, x),
             omega_rho(w, o.eps, 1.0, x), W.value, W.derivative});
  }
  return kExitOk;
}

int cmd_kappa(const Options& o, std::ostream& out) {
  const BumpMoments m = bump_moments();
  const double lo = 1.2 / std::numbers::e;
  const double hi = 1.21 / std::numbers::e;
  const bool in_bracket = m.kappa > lo && m.kappa < hi;
  const bool abs_ok = std::abs(m.abs_moment - 2.0 / std::numbers::e) <= 1e-8;
  const bool square_ok = std::abs(m.square_moment - m.kappa / 2.0) <= 1e-8;

  out << "kappa = " << format_double(m.kappa) << '\n';
  out << "int 2|t|/(t^2-1)^2 e^{-1/(1-t^2)} dt = " << format_double(m.abs_moment)
      << " (2/e = " << format_double(2.0 / std::numbers::e) << "): "
      << (abs_ok ? "PASS" : "FAIL") << '\n';
  out << "int t^2/(t^2-1)^2 e^{-1/(1-t^2)} dt = "
      << format_double(m.square_moment)
      << " (kappa/2 = " << format_double(m.kappa / 2.0) << "): "
      << (square_ok ? "PASS" : "FAIL") << '\n';
  out << "in (1.2/e, 1.21/e): " << (in_bracket ? "PASS" : "FAIL") << '\n';
  if (!o.out_path.empty()) {
    write_json(Json{{"command", "kappa"},
                    {"kappa", m.kappa},
                    {"abs_moment", m.abs_moment},
                    {"square_moment", m.square_moment},
                    {"bracket", {lo, hi}},
                    {"pass", in_bracket && abs_ok && square_ok}},
               o.out_path, out);
  }
  return in_bracket && abs_ok && square_ok ? kExitOk : kExitVerificationFailed;
}

int cmd_perturb(const Options& o, std::ostream& out) {
  const EntireProduct B = load_product(o);
  const PerturbationPlan plan = lemma1_constants(B, o.delta);
  std::vector<double> shifts;
  Json shift_source;
  if (o.shifts == "random") {
    shifts = random_admissible_shifts(plan, o.seed);
    shift_source = {{"kind", "random"},
                    {"seed", o.seed},
                    {"rng", Rng::kAlgorithm}};
  } else if (o.shifts == "max") {
    shifts = maximal_shifts(plan, 1);
    shift_source = {{"kind", "maximal"}};
  } else if (o.shifts == "zero") {
    shifts.assign(plan.zeros.size(), 0.0);
    shift_source = {{"kind", "zero"}};
  } else {
    shifts = shifts_from_json(read_json_file(o.shifts));
    shift_source = {{"kind", "file"}, {"path", o.shifts}};
  }
  const PerturbationResult result = perturb(B, plan, shifts);
  const BoundReport separation = separation_check(B, o.delta);
  const GeometryReport geometry = plan_geometry(plan);
  const bool pass = result.pass && separation.pass && geometry.pass;

  Json d_zeros = Json::array();
  for (double z : result.D.zeros()) d_zeros.push_back(z);
  write_json(Json{{"command", "perturb"},
                  {"zero_set", B.zero_set().note()},
                  {"shift_source", shift_source},
                  {"plan", to_json(result.plan)},
                  {"D", {{"zeros", d_zeros}, {"a0", result.D.a0()}}},
                  {"conclusion", to_json(result.conclusion)},
                  {"disjointness", to_json(result.disjointness)},
                  {"separation", to_json(separation)},
                  {"geometry", to_json(geometry)},
                  {"pass", pass}},
             o.out_path, out);
  return pass ? kExitOk : kExitVerificationFailed;
}

int cmd_criterion(const Options& o, std::ostream& out) {
  const Weight w = load_weight(o);
  const EntireProduct E = load_product(o);
  VerdictThresholds thresholds;
  if (o.tol) thresholds.growth_rel = *o.tol;

  struct Series {
    std::string name;
    CriterionReport report;
  };
  std::vector<Series> series;
  Json doc{{"command", "criterion"}, {"zero_set", E.zero_set().note()}};
  bool pass = true;

  if (o.k_max) {
    const SingularProfile p = singular_profile(w, E, *o.k_max, thresholds);
    Json reports = Json::array();
    for (const CriterionReport& r : p.reports) {
      reports.push_back(to_json(r));
      series.push_back({"profile", r});
    }
    doc["profile"] = {{"reports", reports},
                      {"n_estimate", p.n_estimate ? Json(*p.n_estimate) : Json()},
                      {"note", p.note}};
  } else {
    const CriterionReport r = debranges_sum(w, E, o.k, thresholds);
    doc["sum"] = to_json(r);
    series.push_back({"sum", r});
  }

  if (!o.families.empty()) {
    std::vector<Selector> selectors;
    std::stringstream list(o.families);
    for (std::string name; std::getline(list, name, ',');) {
      selectors.push_back(parse_selector(name));
    }
    Json fams = Json::array();
    for (const FamilyReport& f : subproduct_sums(w, E, selectors, thresholds)) {
      fams.push_back({{"selector", to_string(f.selector)},
                      {"kept", f.kept.size()},
                      {"report", to_json(f.report)},
                      {"factor_dropping", to_json(f.factor_dropping)},
                      {"one_sided", f.one_sided},
                      {"below_half", f.below_half},
                      {"note", f.note}});
      pass = pass && f.factor_dropping.pass;
      series.push_back({to_string(f.selector), f.report});
    }
    doc["families"] = fams;
  }
  doc["pass"] = pass;

  {
    Sink sink(o.out_path, out);
    CsvWriter csv(sink.get(), {"series", "k", "lambda", "term", "partial_sum"},
                  {{"command", "criterion"}, {"weight", w.name()}});
    for (const Series& s : series) {
      for (std::size_t i = 0; i < s.report.terms.size(); ++i) {
        csv.row({s.name, std::to_string(s.report.k)},
                {s.report.lambdas[i], s.report.terms[i],
                 s.report.partial_sums[i]});
      }
    }
  }
  if (!o.report_path.empty()) write_json(doc, o.report_path, out);
  return pass ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Weight w = load_weight(o);
  const auto xs = grid_or(o, "-8:8:201");
  const Corollary1Report r =
      verify_corollary1(w, o.eps, xs, 2e-4, o.tol.value_or(1e-8));
  Json doc = to_json(r);
  doc["command"] = "verify";
  doc["eps"] = o.eps;
  doc["weight"] = w.name();
  write_json(doc, o.out_path, out);
  return r.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_stepweight(const Options& o, std::ostream& out) {
  const Weight w = load_weight(o);
  const StepWeight step = step_weight(w, o.n_range);
  Sink sink(o.out_path, out);
  CsvWriter csv(sink.get(), {"n", "lo", "hi", "value"},
                {{"command", "stepweight"}, {"weight", w.name()}});
  for (const StepSegment& s : step.segments) {
    csv.row({double(s.n), s.lo, s.hi, s.value});
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Smooth majorants, zero perturbations and criterion sums",
               "bernstein"};
  app.require_subcommand(1, 1);

  auto add_weight = [&](CLI::App* c) {
    c->add_option("--weight", o.weight_path, "Weight JSON (default: w = 0)");
  };
  auto add_zeros = [&](CLI::App* c) {
    c->add_option("--zeros", o.zeros_path, "Zero-set JSON")->required();
  };
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", o.out_path, "Output path (default: stdout)");
  };

  CLI::App* smooth = app.add_subcommand("smooth", "Tabulate the smoothed weights");
  add_weight(smooth);
  smooth->add_option("--eps", o.eps);
  smooth->add_option("--rho", o.rho);
  smooth->add_option("--grid", o.grid, "LO:HI:N (default -10:10:201)");
  smooth->add_option("--omega", o.omega, "default | phi");
  add_out(smooth);

  CLI::App* kappa_cmd = app.add_subcommand("kappa", "Bump integrals");
  add_out(kappa_cmd);

  CLI::App* perturb_cmd = app.add_subcommand("perturb", "Zero perturbation");
  add_zeros(perturb_cmd);
  perturb_cmd->add_option("--delta", o.delta);
  perturb_cmd->add_option("--seed", o.seed);
  perturb_cmd->add_option("--shifts", o.shifts,
                          "random | max | zero | JSON file (default random)");
  add_out(perturb_cmd);

  CLI::App* criterion = app.add_subcommand("criterion", "Criterion sums");
  add_weight(criterion);
  add_zeros(criterion);
  criterion->add_option("--k", o.k);
  criterion->add_option("--k-max", o.k_max, "Run the profile k = 0..K");
  criterion->add_option("--families", o.families,
                        "Comma list of all, every_other, positive_only");
  criterion->add_option("--tol", o.tol, "Relative growth threshold");
  criterion->add_option("--report", o.report_path, "JSON report path");
  add_out(criterion);

  CLI::App* verify = app.add_subcommand("verify", "Two-sided and derivative bounds");
  add_weight(verify);
  verify->add_option("--eps", o.eps);
  verify->add_option("--grid", o.grid, "LO:HI:N (default -8:8:201)");
  verify->add_option("--tol", o.tol, "Sandwich tolerance (default 1e-8)");
  add_out(verify);

  CLI::App* step = app.add_subcommand("stepweight", "Log-spaced step majorant");
  add_weight(step);
  step->add_option("--n-range", o.n_range);
  add_out(step);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (smooth->parsed()) return cmd_smooth(o, out);
    if (kappa_cmd->parsed()) return cmd_kappa(o, out);
    if (perturb_cmd->parsed()) return cmd_perturb(o, out);
    if (criterion->parsed()) return cmd_criterion(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (step->parsed()) return cmd_stepweight(o, out);
  } catch (const InputError& e) {
    err << "bad input: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const EvaluationError& e) {
    err << "bad input: " << e.what() << " (at " << format_double(e.at())
        << ")\n";
    return kExitBadInput;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << " (best estimate "
        << format_double(e.best_estimate()) << ", error estimate "
        << format_double(e.error_estimate()) << ")\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitBadInput;
}

}  // namespace bernstein
