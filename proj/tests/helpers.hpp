#pragma once

#include <initializer_list>

#include "cmlab/ensembles.hpp"
#include "cmlab/matcore.hpp"
#include "cmlab/tuple.hpp"

namespace testing {

inline cmlab::ComplexMatrix diag(std::initializer_list<cmlab::Complex> entries) {
  cmlab::ComplexMatrix D = cmlab::ComplexMatrix::Zero(static_cast<Eigen::Index>(entries.size()),
                                                      static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (auto e : entries) D(k, k) = e, ++k;
  return D;
}

inline cmlab::ComplexMatrix mat2(cmlab::Complex a, cmlab::Complex b, cmlab::Complex c,
                                 cmlab::Complex d) {
  cmlab::ComplexMatrix M(2, 2);
  M << a, b, c, d;
  return M;
}

inline cmlab::ComplexMatrix scalar(cmlab::Complex a) { return cmlab::ComplexMatrix::Constant(1, 1, a); }

inline cmlab::OperatorTuple random_tuple(std::uint64_t seed, int n, int d,
                                         cmlab::EnsembleKind kind = cmlab::EnsembleKind::ginibre) {
  cmlab::EnsembleSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.d = d;
  spec.seed = seed;
  spec.rank = 1;
  spec.epsilon = 0.1;
  return cmlab::generate(spec);
}

inline double max_abs(const cmlab::ComplexMatrix& X) { return X.cwiseAbs().maxCoeff(); }

}  // namespace testing
