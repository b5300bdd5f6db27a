#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bernstein/bound_report.hpp"
#include "bernstein/criteria.hpp"
#include "bernstein/entire.hpp"
#include "bernstein/smoothing.hpp"
#include "bernstein/weights.hpp"

namespace bernstein {

using Json = nlohmann::json;

/// Reads and parses a JSON file; InputError on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// {"kind":"discrete","points":[[x,v],...],"bound":B} or
/// {"kind":"builtin","name":"zero|exp_abs|gauss|freud","params":{"alpha":a},
///  "bound":B}. Throws InputError.
Weight weight_from_json(const Json& doc);

/// {"zeros":[...]} or {"family":"n_squared|lacunary_2n|custom","n_max":N,
/// "signs":"both|plus"}; optional "a0" (default 1) and, for explicit lists,
/// "truncated" (default false). Throws InputError.
EntireProduct product_from_json(const Json& doc);

/// [s, ...] or {"shifts":[s, ...]}.
std::vector<double> shifts_from_json(const Json& doc);

struct GridSpec {
  double lo;
  double hi;
  int points;
  std::vector<double> values() const;
};

/// "LO:HI:N" with lo < hi and N >= 2. Throws InputError.
GridSpec parse_grid(const std::string& text);

/// 17 significant digits, '.' decimal point, locale independent.
std::string format_double(double v);

/// Comma-separated output preceded by "# schema=1" and optional "# key=value"
/// metadata lines.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& columns,
            const std::vector<std::pair<std::string, std::string>>& meta = {});
  void row(const std::vector<double>& values);
  /// Row with leading text fields followed by numbers.
  void row(const std::vector<std::string>& text,
           const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

Json to_json(const BoundReport& r);
Json to_json(const CriterionReport& r);
Json to_json(const PerturbationPlan& p);
Json to_json(const GeometryReport& g);
Json to_json(const Corollary1Report& r);

}  // namespace bernstein
