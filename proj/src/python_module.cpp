#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bernstein/cli.hpp"
#include "bernstein/criteria.hpp"
#include "bernstein/entire.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/io.hpp"
#include "bernstein/smoothing.hpp"
#include "bernstein/weights.hpp"

namespace py = pybind11;
using namespace bernstein;

namespace {

py::tuple pair(const ValueAndDerivative& v) { return py::make_tuple(v.value, v.derivative); }

std::vector<SupportPoint> to_points(const std::vector<std::pair<double, double>>& pts) {
  std::vector<SupportPoint> out;
  out.reserve(pts.size());
  for (const auto& [x, v] : pts) out.push_back({x, v});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted polynomial approximation: smooth majorants, zero perturbation, criterion sums.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", error);
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", error);
  py::register_exception<SupportViolation>(m, "SupportViolation", precondition);
  py::register_exception<InadmissibleShift>(m, "InadmissibleShift", precondition);
  py::register_exception<DegenerateFamily>(m, "DegenerateFamily", precondition);
  py::register_exception<EvaluationError>(m, "EvaluationError", error);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", error);
  py::register_exception<GrowthError>(m, "GrowthError", error);
  py::register_exception<InputError>(m, "InputError", error);

  py::class_<Weight>(m, "Weight")
      .def_static("evaluable", &Weight::evaluable, py::arg("f"), py::arg("bound"),
                  py::arg("name") = "python", py::arg("even_nonincreasing") = false)
      .def_static("discrete",
                  [](const std::vector<std::pair<double, double>>& pts, double bound) {
                    return Weight::discrete(to_points(pts), bound);
                  },
                  py::arg("points"), py::arg("bound") = 0.0)
      .def_static("zero", &zero_weight)
      .def_static("exp_abs", &exp_abs_weight)
      .def_static("gauss", &gauss_weight)
      .def_static("freud", &freud_weight, py::arg("alpha"))
      .def_static("from_json", [](const std::string& text) {
        return weight_from_json(Json::parse(text));
      })
      .def("__call__", &Weight::operator())
      .def_property_readonly("name", &Weight::name)
      .def_property_readonly("bound", &Weight::bound)
      .def_property_readonly("is_discrete", &Weight::is_discrete)
      .def_property_readonly("points", [](const Weight& w) {
        std::vector<std::pair<double, double>> out;
        for (const SupportPoint& p : w.points()) out.emplace_back(p.x, p.value);
        return out;
      });

  m.def("upper_baire", [](const Weight& w, double x) { return upper_baire(w, x); });

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("name", &BoundReport::name)
      .def_readonly("grid", &BoundReport::grid)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("max_violation", &BoundReport::max_violation)
      .def_readonly("tolerance", &BoundReport::tolerance)
      .def_readonly("passed", &BoundReport::pass);

  m.def("kappa", &kappa);
  m.def("bump_moments", [] {
    const BumpMoments b = bump_moments();
    py::dict d;
    d["kappa"] = b.kappa;
    d["abs_moment"] = b.abs_moment;
    d["square_moment"] = b.square_moment;
    return d;
  });
  m.def("beta", &beta, py::arg("w"), py::arg("eps"), py::arg("x"));
  m.def("omega_rho", &omega_rho, py::arg("w"), py::arg("eps"), py::arg("rho"), py::arg("x"));
  m.def("phi", [](double eps, double x) { return pair(phi(eps, x)); }, py::arg("eps"),
        py::arg("x"));
  m.def("smooth_weight",
        [](const Weight& w, double eps, double x) { return pair(smooth_weight_phi(w, eps, x)); },
        py::arg("w"), py::arg("eps"), py::arg("x"),
        "W_eps(x) and W'_eps(x) with omega = phi_eps.");
  m.def("smooth_weight_default",
        [](const Weight& w, double eps, double x) {
          return smooth_weight(w, SmoothingConfig::with_default_omega(eps), x);
        },
        py::arg("w"), py::arg("eps"), py::arg("x"));

  py::class_<Corollary1Report>(m, "Corollary1Report")
      .def_readonly("lower", &Corollary1Report::lower)
      .def_readonly("upper", &Corollary1Report::upper)
      .def_readonly("derivative", &Corollary1Report::derivative)
      .def_readonly("agreement", &Corollary1Report::agreement)
      .def_readonly("passed", &Corollary1Report::pass);
  m.def("verify_corollary1",
        [](const Weight& w, double eps, const std::vector<double>& grid, double h,
           double tol) { return verify_corollary1(w, eps, grid, h, tol); },
        py::arg("w"), py::arg("eps"), py::arg("grid"), py::arg("h") = 2e-4,
        py::arg("sandwich_tol") = 1e-8);

  py::class_<EntireProduct>(m, "EntireProduct")
      .def(py::init([](std::vector<double> zeros, double a0, bool truncated) {
             return EntireProduct(ZeroSet(std::move(zeros), "", truncated), a0);
           }),
           py::arg("zeros"), py::arg("a0") = 1.0, py::arg("truncated") = false)
      .def_static("n_squared",
                  [](int n, bool both) { return EntireProduct(ZeroSet::n_squared(n, both)); },
                  py::arg("n_max"), py::arg("both_signs") = true)
      .def_static("lacunary_2n",
                  [](int n, bool both) { return EntireProduct(ZeroSet::lacunary_2n(n, both)); },
                  py::arg("n_max"), py::arg("both_signs") = true)
      .def_property_readonly("zeros", [](const EntireProduct& B) {
        return std::vector<double>(B.zeros().begin(), B.zeros().end());
      })
      .def_property_readonly("a0", &EntireProduct::a0)
      .def("__call__", [](const EntireProduct& B, double x) { return eval_product(B, x).value(); })
      .def("derivative_at_zero",
           [](const EntireProduct& B, double l) { return derivative_at_zero(B, l); })
      .def("theta", [](const EntireProduct& B) { return theta(B).value; });

  py::class_<PerturbationPlan>(m, "PerturbationPlan")
      .def_readonly("delta", &PerturbationPlan::delta)
      .def_readonly("delta_eff", &PerturbationPlan::delta_eff)
      .def_readonly("eps", &PerturbationPlan::eps)
      .def_readonly("c_eps", &PerturbationPlan::c_eps)
      .def_readonly("theta", &PerturbationPlan::theta)
      .def_readonly("rho_delta", &PerturbationPlan::rho_delta)
      .def_readonly("translation", &PerturbationPlan::translation)
      .def_readonly("deltas_lambda", &PerturbationPlan::deltas_lambda)
      .def_readonly("c_delta", &PerturbationPlan::c_delta)
      .def_readonly("note", &PerturbationPlan::note)
      .def("max_shift", &PerturbationPlan::max_shift);
  m.def("lemma1_constants",
        [](const EntireProduct& B, double delta) { return lemma1_constants(B, delta); },
        py::arg("B"), py::arg("delta"));
  m.def("random_admissible_shifts", &random_admissible_shifts, py::arg("plan"),
        py::arg("seed"));
  m.def("maximal_shifts", &maximal_shifts, py::arg("plan"), py::arg("sign") = 1);

  py::class_<PerturbationResult>(m, "PerturbationResult")
      .def_readonly("D", &PerturbationResult::D)
      .def_readonly("conclusion", &PerturbationResult::conclusion)
      .def_readonly("disjointness", &PerturbationResult::disjointness)
      .def_readonly("passed", &PerturbationResult::pass);
  m.def("perturb",
        [](const EntireProduct& B, const PerturbationPlan& plan,
           const std::vector<double>& shifts) { return perturb(B, plan, shifts); },
        py::arg("B"), py::arg("plan"), py::arg("shifts"));
  m.def("separation_check",
        [](const EntireProduct& B, double delta) { return separation_check(B, delta); });
  m.def("ratio_bound_check", [](double a, double b, double x, double Delta) {
    const RatioCheck r = ratio_bound_check(a, b, x, Delta);
    return py::make_tuple(r.ratio, r.bound, r.pass);
  });

  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("k", &CriterionReport::k)
      .def_readonly("lambdas", &CriterionReport::lambdas)
      .def_readonly("terms", &CriterionReport::terms)
      .def_readonly("partial_sums", &CriterionReport::partial_sums)
      .def_readonly("sum", &CriterionReport::sum)
      .def_readonly("decay_exponent", &CriterionReport::decay_exponent)
      .def_readonly("note", &CriterionReport::note)
      .def_property_readonly("verdict",
                             [](const CriterionReport& r) { return to_string(r.verdict); });
  m.def("debranges_sum",
        [](const Weight& w, const EntireProduct& B, int k) { return debranges_sum(w, B, k); },
        py::arg("w"), py::arg("B"), py::arg("k") = 0);
  m.def("singular_profile",
        [](const Weight& w, const EntireProduct& E, int k_max) {
          const SingularProfile p = singular_profile(w, E, k_max);
          return py::make_tuple(p.reports, p.n_estimate, p.note);
        },
        py::arg("w"), py::arg("E"), py::arg("k_max"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
