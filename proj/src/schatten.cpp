#include "cmlab/schatten.hpp"

#include <cmath>
#include <string>

#include "cmlab/errors.hpp"

namespace cmlab {

SchattenExponent::SchattenExponent(double p) : p_(p) {
  if (std::isnan(p) || !(p > 0.0)) {
    throw DomainError("Schatten exponent must satisfy p > 0, got " + std::to_string(p));
  }
}

double SchattenExponent::dual() const {
  if (is_infinite()) return 1.0;
  return dual_exponent(p_);
}

double dual_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("dual_exponent requires finite p > 1, got " + std::to_string(p));
  }
  return p / (p - 1.0);
}

double power_sum(const SingularSpectrum& s, double p, const Tolerances& tol) {
  const double zero = tol.zero_rel * s.max();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const double v = s.values(j);
    if (v > zero) acc += std::pow(v, p);
  }
  return acc;
}

double spectrum_norm(const SingularSpectrum& s, double p, const Tolerances& tol) {
  const double top = s.max();
  if (top == 0.0) return 0.0;
  const double zero = tol.zero_rel * top;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const double v = s.values(j);
    if (v > zero) acc += std::pow(v / top, p);
  }
  return top * std::pow(acc, 1.0 / p);
}

double schatten_power_sum(const ComplexMatrix& X, double p, const Tolerances& tol) {
  const SchattenExponent e(p);
  if (e.is_infinite()) throw DomainError("schatten_power_sum: p must be finite");
  return power_sum(singular_values(X), p, tol);
}

NormValue schatten_norm(const ComplexMatrix& X, SchattenExponent p, const Tolerances& tol) {
  const SingularSpectrum s = singular_values(X);
  NormValue out;
  out.p = p.p();
  out.is_quasi = p.is_quasi();
  if (p.is_infinite()) {
    out.value = s.max();
  } else if (p.p() == 2.0) {
    // Frobenius; avoids the pow round trip so the p = 2 identities stay tight
    out.value = std::sqrt(power_sum(s, 2.0, tol));
  } else {
    out.value = spectrum_norm(s, p.p(), tol);
  }
  return out;
}

Complex trace_pairing(const ComplexMatrix& Y, const ComplexMatrix& B) {
  if (Y.rows() != B.cols() || Y.cols() != B.rows()) {
    throw InputError("trace_pairing: dimension mismatch");
  }
  // tr(YB) = sum_ij Y_ij B_ji without forming the product
  return (Y.array() * B.transpose().array()).sum();
}

InequalityReport holder_check(const ComplexMatrix& X, const ComplexMatrix& Y, double p,
                              const Tolerances& tol) {
  const SchattenExponent e(p);
  const double q = e.dual();
  const double lhs = std::abs(trace_pairing(X, Y));
  const double rhs = schatten_norm(X, e, tol).value * schatten_norm(Y, SchattenExponent(q), tol).value;
  return make_report("holder", lhs, rhs, p, 2, static_cast<int>(X.rows()), tol.margin);
}

}  // namespace cmlab
