#include "cmlab/inequalities.hpp"

#include <cmath>
#include <string>

#include "cmlab/errors.hpp"

namespace cmlab {

namespace {

void require_same_dims(const ComplexMatrix& A, const ComplexMatrix& B, const char* who) {
  require_square_finite(A, who);
  require_square_finite(B, who);
  if (A.rows() != B.rows()) throw InputError(std::string(who) + ": dimension mismatch");
}

void require_positive(double p, const char* who) {
  if (std::isnan(p) || !(p > 0.0) || !std::isfinite(p)) {
    throw DomainError(std::string(who) + ": p must be finite and positive");
  }
}

void require_tuple(const OperatorTuple& T, const char* who) {
  if (T.size() < 2) throw InputError(std::string(who) + ": needs n >= 2 matrices");
}

// ||X||_p^p
double pp(const ComplexMatrix& X, double p, const Tolerances& tol) {
  return schatten_power_sum(X, p, tol);
}

// small side first, regardless of which regime we are in
InequalityReport oriented(const char* base, bool low_regime, double low_lhs, double low_rhs,
                          double p, int n, int d, const Tolerances& tol) {
  const std::string tag = std::string(base) + (low_regime ? "[p<=2]" : "[p>=2]");
  return low_regime ? make_report(tag, low_lhs, low_rhs, p, n, d, tol.margin)
                    : make_report(tag, low_rhs, low_lhs, p, n, d, tol.margin);
}

}  // namespace

ClarksonReports clarkson_pair(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                              const Tolerances& tol) {
  require_positive(p, "clarkson_pair");
  require_same_dims(A, B, "clarkson_pair");
  const int d = static_cast<int>(A.rows());
  const double base = pp(A, p, tol) + pp(B, p, tol);
  const double middle = pp(A + B, p, tol) + pp(A - B, p, tol);
  const double small_const = p <= 2.0 ? std::pow(2.0, p - 1.0) : 2.0;
  const double large_const = p <= 2.0 ? 2.0 : std::pow(2.0, p - 1.0);
  const char* regime = p <= 2.0 ? "[p<=2]" : "[p>=2]";
  return ClarksonReports{
      make_report(std::string("clarkson.lower") + regime, small_const * base, middle, p, 2, d,
                  tol.margin),
      make_report(std::string("clarkson.upper") + regime, middle, large_const * base, p, 2, d,
                  tol.margin)};
}

InequalityReport parallelogram(const ComplexMatrix& A, const ComplexMatrix& B,
                               const Tolerances& tol) {
  require_same_dims(A, B, "parallelogram");
  const double lhs = (A - B).squaredNorm() + (A + B).squaredNorm();
  const double rhs = 2.0 * (A.squaredNorm() + B.squaredNorm());
  return make_equality_report("parallelogram", lhs, rhs, 2.0, 2, static_cast<int>(A.rows()),
                              tol.atol);
}

TupleNormSums tuple_norm_sums(const OperatorTuple& T, double p, const Tolerances& tol) {
  TupleNormSums out;
  const SchattenExponent e(p);
  out.sum_norm = schatten_norm(T.sum(), e, tol).value;
  for (const auto& diff : T.pairwise_differences()) {
    out.pair_norms.push_back(schatten_norm(diff, e, tol).value);
  }
  for (const auto& A : T) out.sum_powers += pp(A, p, tol);
  return out;
}

InequalityReport hk_ntuple(const OperatorTuple& T, double p, const Tolerances& tol) {
  require_positive(p, "hk_ntuple");
  require_tuple(T, "hk_ntuple");
  const int n = T.n();
  double summed = pp(T.sum(), p, tol);
  for (const auto& diff : T.pairwise_differences()) summed += pp(diff, p, tol);
  double base = 0.0;
  for (const auto& A : T) base += pp(A, p, tol);
  const double scaled = std::pow(static_cast<double>(n), p - 1.0) * base;
  return oriented("hk", p <= 2.0, scaled, summed, p, n, T.dim(), tol);
}

InequalityReport bcl(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                     const Tolerances& tol) {
  if (std::isnan(p) || p < 1.0 || !std::isfinite(p)) {
    throw DomainError("bcl: requires 1 <= p < inf");
  }
  require_same_dims(A, B, "bcl");
  const SchattenExponent e(p);
  const double averaged =
      std::pow((pp(A + B, p, tol) + pp(A - B, p, tol)) / 2.0, 2.0 / p);
  const double a = schatten_norm(A, e, tol).value;
  const double b = schatten_norm(B, e, tol).value;
  const double convexity = a * a + (p - 1.0) * b * b;
  return oriented("bcl", p <= 2.0, convexity, averaged, p, 2, static_cast<int>(A.rows()), tol);
}

InequalityReport bcl_dominates_clarkson(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                                        const Tolerances& tol) {
  if (std::isnan(p) || p < 1.0 || p > 2.0) {
    throw DomainError("bcl_dominates_clarkson: requires 1 <= p <= 2");
  }
  require_same_dims(A, B, "bcl_dominates_clarkson");
  const SchattenExponent e(p);
  const double a = schatten_norm(A, e, tol).value;
  const double b = schatten_norm(B, e, tol).value;
  const double convexity_side = std::pow(a * a + (p - 1.0) * b * b, p / 2.0);
  const double clarkson_side = std::pow(2.0, p / 2.0 - 1.0) * (std::pow(a, p) + std::pow(b, p));
  return make_report("bcl_dominates_clarkson", clarkson_side, convexity_side, p, 2,
                     static_cast<int>(A.rows()), tol.margin);
}

InequalityReport mccarthy(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                          const Tolerances& tol) {
  require_same_dims(A, B, "mccarthy");
  const double q = dual_exponent(p);
  const SchattenExponent e(p);
  const double summed = std::pow(schatten_norm(A + B, e, tol).value, q) +
                        std::pow(schatten_norm(A - B, e, tol).value, q);
  const double scaled = 2.0 * std::pow(pp(A, p, tol) + pp(B, p, tol), q / p);
  return oriented("mccarthy", p <= 2.0, summed, scaled, p, 2, static_cast<int>(A.rows()), tol);
}

InequalityReport ak_with_coefficient(const OperatorTuple& T, double p, double coefficient,
                                     bool reversed, const char* tag, const Tolerances& tol) {
  require_tuple(T, tag);
  const double q = dual_exponent(p);
  const TupleNormSums s = tuple_norm_sums(T, p, tol);
  double summed = std::pow(s.sum_norm, q);
  for (double v : s.pair_norms) summed += std::pow(v, q);
  const double scaled = coefficient * std::pow(s.sum_powers, q / p);
  return oriented(tag, !reversed, summed, scaled, p, T.n(), T.dim(), tol);
}

InequalityReport ak(const OperatorTuple& T, double p, const Tolerances& tol) {
  if (!(p > 1.0)) throw DomainError("ak: requires p > 1");
  return ak_with_coefficient(T, p, static_cast<double>(T.n()), p > 2.0, "ak", tol);
}

InequalityReport cm(const OperatorTuple& T, double p, const Tolerances& tol) {
  if (!(p > 1.0)) throw DomainError("cm: requires p > 1");
  const double q = dual_exponent(p);
  return ak_with_coefficient(T, p, std::pow(static_cast<double>(T.n()), q / 2.0), p > 2.0, "cm",
                             tol);
}

}  // namespace cmlab
