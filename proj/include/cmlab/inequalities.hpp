#pragma once

#include <utility>

#include "cmlab/report.hpp"
#include "cmlab/schatten.hpp"
#include "cmlab/tuple.hpp"

namespace cmlab {

// Clarkson-McCarthy family checkers. Each picks its direction from p
// (the "p <= 2" form for p <= 2, the reversed form otherwise) and reports
// the side claimed to be smaller as lhs.

struct ClarksonReports {
  InequalityReport lower;
  InequalityReport upper;
};

/// 2^{p-1}(a+b) <= ||A+B||^p + ||A-B||^p <= 2(a+b) for p <= 2, with a = ||A||_p^p,
/// b = ||B||_p^p; for p >= 2 the constants 2 and 2^{p-1} swap roles.
ClarksonReports clarkson_pair(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                              const Tolerances& tol = default_tolerances());

/// ||A-B||_2^2 + ||A+B||_2^2 = 2(||A||_2^2 + ||B||_2^2); margin is minus the absolute defect.
InequalityReport parallelogram(const ComplexMatrix& A, const ComplexMatrix& B,
                               const Tolerances& tol = default_tolerances());

/// n^{p-1} sum ||A_i||^p  vs  ||sum A_i||^p + sum_{i<j} ||A_i - A_j||^p  (n >= 2).
InequalityReport hk_ntuple(const OperatorTuple& T, double p,
                           const Tolerances& tol = default_tolerances());

/// ((||A+B||^p + ||A-B||^p)/2)^{2/p}  vs  ||A||^2 + (p-1)||B||^2, p >= 1.
InequalityReport bcl(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                     const Tolerances& tol = default_tolerances());

/// (||A||^2 + (p-1)||B||^2)^{p/2} >= 2^{p/2-1}(||A||^p + ||B||^p), 1 <= p <= 2.
InequalityReport bcl_dominates_clarkson(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                                        const Tolerances& tol = default_tolerances());

/// ||A+B||^q + ||A-B||^q  vs  2(||A||^p + ||B||^p)^{q/p}, p > 1.
InequalityReport mccarthy(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                          const Tolerances& tol = default_tolerances());

/// ||sum A_i||^q + sum_{i<j} ||A_i - A_j||^q  vs  n (sum ||A_i||^p)^{q/p}, p > 1, n >= 2.
InequalityReport ak(const OperatorTuple& T, double p,
                    const Tolerances& tol = default_tolerances());

/// As ak with coefficient n^{q/2} in place of n.
InequalityReport cm(const OperatorTuple& T, double p,
                    const Tolerances& tol = default_tolerances());

/// Norms of the pieces entering every n-tuple inequality at one exponent.
struct TupleNormSums {
  double sum_norm = 0.0;                  // ||sum A_i||_p
  std::vector<double> pair_norms;         // ||A_i - A_j||_p, i < j
  double sum_powers = 0.0;                // sum_i ||A_i||_p^p
};
TupleNormSums tuple_norm_sums(const OperatorTuple& T, double p,
                              const Tolerances& tol = default_tolerances());

/// The ak/cm inequality at exponent p with an arbitrary coefficient on the
/// n-side. `reversed` forces the p >= 2 orientation regardless of p.
InequalityReport ak_with_coefficient(const OperatorTuple& T, double p, double coefficient,
                                     bool reversed, const char* tag,
                                     const Tolerances& tol = default_tolerances());

}  // namespace cmlab
