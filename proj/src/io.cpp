#include "bernstein/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "bernstein/errors.hpp"

namespace bernstein {

namespace {

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) {
    throw InputError(std::string(what) + " must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
  return v;
}

// Non-finite reals are written as strings so documents stay valid JSON.
Json real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json reals(const std::vector<double>& vs) {
  Json a = Json::array();
  for (double v : vs) a.push_back(real(v));
  return a;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Weight weight_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("weight: expected a JSON object");
  const std::string kind = doc.value("kind", "");
  double bound = 0.0;
  if (doc.contains("bound")) {
    bound = number_at(doc["bound"], "weight.bound");
    if (!(bound > 0.0)) throw InputError("weight.bound must be positive");
  }
  try {
    if (kind == "discrete") {
      if (!doc.contains("points") || !doc["points"].is_array()) {
        throw InputError("discrete weight: 'points' must be an array");
      }
      std::vector<SupportPoint> points;
      for (const Json& p : doc["points"]) {
        if (!p.is_array() || p.size() != 2) {
          throw InputError("discrete weight: each point must be [x, value]");
        }
        points.push_back({number_at(p[0], "point x"),
                          number_at(p[1], "point value")});
      }
      return Weight::discrete(std::move(points), bound);
    }
    if (kind == "builtin") {
      const std::string name = doc.value("name", "");
      Weight base = zero_weight();
      if (name == "zero") {
        base = zero_weight();
      } else if (name == "exp_abs") {
        base = exp_abs_weight();
      } else if (name == "gauss") {
        base = gauss_weight();
      } else if (name == "freud") {
        double alpha = 2.0;
        if (doc.contains("params") && doc["params"].contains("alpha")) {
          alpha = number_at(doc["params"]["alpha"], "params.alpha");
        }
        base = freud_weight(alpha);
      } else {
        throw InputError("builtin weight: unknown name '" + name +
                         "' (expected zero, exp_abs, gauss or freud)");
      }
      if (bound <= 0.0) return base;
      return Weight::evaluable([base](double x) { return base(x); }, bound,
                               base.name(), true);
    }
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
  throw InputError("weight: 'kind' must be 'discrete' or 'builtin'");
}

EntireProduct product_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("zero set: expected a JSON object");
  const double a0 = doc.contains("a0") ? number_at(doc["a0"], "a0") : 1.0;
  try {
    const std::string family = doc.value("family", "custom");
    if (family == "n_squared" || family == "lacunary_2n") {
      if (!doc.contains("n_max") || !doc["n_max"].is_number_integer()) {
        throw InputError("zero set: 'n_max' must be an integer");
      }
      const int n_max = doc["n_max"].get<int>();
      const std::string signs = doc.value("signs", "both");
      if (signs != "both" && signs != "plus") {
        throw InputError("zero set: 'signs' must be 'both' or 'plus'");
      }
      const bool both = signs == "both";
      return EntireProduct(family == "n_squared"
                               ? ZeroSet::n_squared(n_max, both)
                               : ZeroSet::lacunary_2n(n_max, both),
                           a0);
    }
    if (family != "custom") {
      throw InputError("zero set: unknown family '" + family + "'");
    }
    if (!doc.contains("zeros") || !doc["zeros"].is_array()) {
      throw InputError("zero set: 'zeros' must be an array");
    }
    std::vector<double> zeros;
    for (const Json& z : doc["zeros"]) zeros.push_back(number_at(z, "zero"));
    const bool truncated = doc.value("truncated", false);
    return EntireProduct(ZeroSet(std::move(zeros), doc.value("note", ""),
                                 truncated),
                         a0);
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  } catch (const Json::exception& e) {
    throw InputError(std::string("zero set: ") + e.what());
  }
}

std::vector<double> shifts_from_json(const Json& doc) {
  const Json& list = doc.is_object() && doc.contains("shifts") ? doc["shifts"]
                                                               : doc;
  if (!list.is_array()) throw InputError("shifts: expected an array");
  std::vector<double> out;
  for (const Json& s : list) out.push_back(number_at(s, "shift"));
  return out;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    xs.push_back(i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1));
  }
  return xs;
}

GridSpec parse_grid(const std::string& text) {
  auto parse_number = [&](std::string_view part, auto& out) {
    const char* first = part.data();
    const char* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
      throw InputError("--grid: cannot parse '" + std::string(part) + "' in '" +
                       text + "' (expected LO:HI:N)");
    }
  };
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw InputError("--grid: expected LO:HI:N, got '" + text + "'");
  }
  const std::string_view view(text);
  GridSpec g{};
  parse_number(view.substr(0, c1), g.lo);
  parse_number(view.substr(c1 + 1, c2 - c1 - 1), g.hi);
  parse_number(view.substr(c2 + 1), g.points);
  if (!(g.lo < g.hi) || !std::isfinite(g.lo) || !std::isfinite(g.hi)) {
    throw InputError("--grid: need finite LO < HI");
  }
  if (g.points < 2) throw InputError("--grid: need N >= 2");
  return g;
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(
    std::ostream& out, const std::vector<std::string>& columns,
    const std::vector<std::pair<std::string, std::string>>& meta)
    : out_(out), columns_(columns.size()) {
  out_ << "# schema=1\n";
  for (const auto& [key, value] : meta) out_ << "# " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) { row({}, values); }

void CsvWriter::row(const std::vector<std::string>& text,
                    const std::vector<double>& values) {
  if (text.size() + values.size() != columns_) {
    throw std::logic_error("CsvWriter: row width does not match the header");
  }
  bool first = true;
  for (const std::string& t : text) {
    out_ << (first ? "" : ",") << t;
    first = false;
  }
  for (double v : values) {
    out_ << (first ? "" : ",") << format_double(v);
    first = false;
  }
  out_ << '\n';
}

Json to_json(const BoundReport& r) {
  return Json{{"name", r.name},
              {"pass", r.pass},
              {"max_violation", real(r.max_violation)},
              {"tolerance", r.tolerance},
              {"relative", r.relative},
              {"points", r.grid.size()}};
}

Json to_json(const CriterionReport& r) {
  return Json{{"k", r.k},
              {"terms", r.terms.size()},
              {"sum", real(r.sum)},
              {"tail_indicator", real(r.tail_indicator)},
              {"growth", real(r.growth)},
              {"decay_exponent", real(r.decay_exponent)},
              {"verdict", to_string(r.verdict)},
              {"note", r.note}};
}

Json to_json(const PerturbationPlan& p) {
  return Json{{"delta", p.delta},
              {"delta_effective", p.delta_eff},
              {"eps", p.eps},
              {"c_eps", real(p.c_eps)},
              {"theta", real(p.theta)},
              {"rho_delta", real(p.rho_delta)},
              {"rho_delta_normalized", real(p.rho_delta_normalized)},
              {"translation", p.translation},
              {"c_delta", real(p.c_delta)},
              {"zeros", reals(p.zeros)},
              {"deltas_lambda", reals(p.deltas_lambda)},
              {"shifts", reals(p.shifts)},
              {"note", p.note}};
}

Json to_json(const GeometryReport& g) {
  return Json{{"pass", g.pass},
              {"disjoint", to_json(g.disjoint)},
              {"midpoint", to_json(g.midpoint)},
              {"origin", to_json(g.origin)},
              {"containment", to_json(g.containment)}};
}

Json to_json(const Corollary1Report& r) {
  Json rows = Json::array();
  for (const Corollary1Row& row : r.rows) {
    rows.push_back(Json{{"x", row.x},
                        {"w", real(row.w)},
                        {"beta", real(row.beta)},
                        {"w_eps", real(row.w_eps)},
                        {"W", real(row.W)},
                        {"dW_analytic", real(row.dW_analytic)},
                        {"dW_numeric", real(row.dW_numeric)},
                        {"derivative_bound", real(row.derivative_bound)}});
  }
  return Json{{"pass", r.pass},
              {"lower", to_json(r.lower)},
              {"upper", to_json(r.upper)},
              {"derivative", to_json(r.derivative)},
              {"agreement", to_json(r.agreement)},
              {"rows", rows}};
}

}  // namespace bernstein
