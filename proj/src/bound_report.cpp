#include "bernstein/bound_report.hpp"

#include <cmath>
#include <limits>

namespace bernstein {

BoundReport make_bound_report(std::string name, double tolerance,
                              bool relative) {
  BoundReport report;
  report.name = std::move(name);
  report.tolerance = tolerance;
  report.relative = relative;
  report.max_violation = -std::numeric_limits<double>::infinity();
  return report;
}

void BoundReport::add(double at, double left, double right) {
  grid.push_back(at);
  lhs.push_back(left);
  rhs.push_back(right);
  double violation = left - right;
  if (relative) violation /= std::abs(right);
  if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
  if (violation > max_violation) max_violation = violation;
  pass = max_violation <= tolerance;
}

}  // namespace bernstein
