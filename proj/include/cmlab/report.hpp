#pragma once

#include <string>

#include "cmlab/tolerances.hpp"

namespace cmlab {

/// Outcome of one inequality evaluation. `lhs` is always the side that the
/// inequality claims is smaller, so a report reads "lhs <= rhs".
struct InequalityReport {
  std::string tag;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // (rhs - lhs) / max(1, rhs)
  bool satisfied = true;
  double p = 0.0;
  int n = 0;
  int d = 0;
};

InequalityReport make_report(std::string tag, double lhs, double rhs, double p, int n, int d,
                             double tol_margin = default_tolerances().margin);

/// Two-sided equality check: margin = -|lhs - rhs| / max(1, |rhs|).
InequalityReport make_equality_report(std::string tag, double lhs, double rhs, double p, int n,
                                      int d, double tol);

}  // namespace cmlab
