#pragma once

#include <string>
#include <vector>

namespace bernstein {

/// Result of checking an inequality lhs <= rhs at a list of points.
///
/// violation_i is lhs_i - rhs_i, or (lhs_i - rhs_i) / |rhs_i| when the report
/// is relative. pass holds iff max_violation <= tolerance.
struct BoundReport {
  std::string name;
  std::vector<double> grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = true;

  void add(double at, double left, double right);
  /// Smallest slack rhs - lhs (absolute or relative), i.e. -max_violation.
  double margin() const { return -max_violation; }
};

BoundReport make_bound_report(std::string name, double tolerance,
                              bool relative = false);

}  // namespace bernstein
