#include "cmlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cmlab {

InequalityReport make_report(std::string tag, double lhs, double rhs, double p, int n, int d,
                             double tol_margin) {
  InequalityReport r;
  r.tag = std::move(tag);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = (rhs - lhs) / std::max(1.0, rhs);
  r.satisfied = std::isfinite(r.margin) && r.margin >= -tol_margin;
  r.p = p;
  r.n = n;
  r.d = d;
  return r;
}

InequalityReport make_equality_report(std::string tag, double lhs, double rhs, double p, int n,
                                      int d, double tol) {
  InequalityReport r;
  r.tag = std::move(tag);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -std::abs(lhs - rhs);
  r.satisfied = std::isfinite(r.margin) && r.margin >= -tol;
  r.p = p;
  r.n = n;
  r.d = d;
  return r;
}

}  // namespace cmlab
