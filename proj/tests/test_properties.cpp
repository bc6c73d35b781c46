// Randomised invariants across the inequality family.

#include <doctest.h>

#include <cmath>

#include "cmlab/inequalities.hpp"
#include "cmlab/schatten.hpp"
#include "helpers.hpp"

using namespace cmlab;
using testing::random_tuple;

namespace {

constexpr EnsembleKind kKinds[] = {EnsembleKind::ginibre,    EnsembleKind::hermitian,
                                   EnsembleKind::psd,        EnsembleKind::low_rank,
                                   EnsembleKind::diagonal_real, EnsembleKind::near_equal,
                                   EnsembleKind::nilpotent};

OperatorTuple transform(const OperatorTuple& T, const ComplexMatrix& U, const ComplexMatrix& V,
                        Complex c) {
  std::vector<ComplexMatrix> out;
  for (const auto& A : T) out.push_back(c * U * A * V);
  return OperatorTuple(std::move(out));
}

}  // namespace

TEST_CASE("property: at p = 2 every checker is an equality") {
  for (int k = 0; k < 20; ++k) {
    const auto T = random_tuple(900 + k, 3, 1 + k % 5, kKinds[k % 7]);
    CHECK(std::abs(hk_ntuple(T, 2.0).margin) <= 1e-9);
    CHECK(std::abs(ak(T, 2.0).margin) <= 1e-9);
    CHECK(std::abs(mccarthy(T[0], T[1], 2.0).margin) <= 1e-9);
    CHECK(std::abs(bcl(T[0], T[1], 2.0).margin) <= 1e-9);
    const ClarksonReports c = clarkson_pair(T[0], T[1], 2.0);
    CHECK(std::abs(c.lower.margin) <= 1e-9);
    CHECK(std::abs(c.upper.margin) <= 1e-9);
  }
}

TEST_CASE("property: direction dispatch swaps which side is lhs") {
  const auto T = random_tuple(920, 3, 3);
  const InequalityReport low = hk_ntuple(T, 1.5), high = hk_ntuple(T, 3.0);
  CHECK(low.tag == "hk[p<=2]");
  CHECK(high.tag == "hk[p>=2]");
  // at p <= 2 the n^{p-1} sum side is small, at p >= 2 it is large
  const double base_low = std::pow(3.0, 0.5) * tuple_norm_sums(T, 1.5).sum_powers;
  const double base_high = std::pow(3.0, 2.0) * tuple_norm_sums(T, 3.0).sum_powers;
  CHECK(low.lhs == doctest::Approx(base_low).epsilon(1e-12));
  CHECK(high.rhs == doctest::Approx(base_high).epsilon(1e-12));
}

TEST_CASE("property: domination chain ak margin <= cm margin for 1 < p <= 2") {
  for (int k = 0; k < 40; ++k) {
    const auto T = random_tuple(930 + k, 2 + k % 4, 1 + k % 4, kKinds[k % 7]);
    for (double p : {1.3, 1.5, 2.0}) {
      const InequalityReport a = ak(T, p), c = cm(T, p);
      CHECK(a.satisfied);
      CHECK(c.satisfied);
      CHECK(a.margin <= c.margin + 1e-12);
    }
  }
}

TEST_CASE("property: scale covariance and unitary invariance") {
  Rng rng(940);
  for (int k = 0; k < 10; ++k) {
    const int d = 1 + k % 4;
    const auto T = random_tuple(941 + k, 3, d, kKinds[k % 7]);
    const ComplexMatrix U = haar_unitary(rng, d), V = haar_unitary(rng, d);
    const OperatorTuple rotated = transform(T, U, V, 1.0);
    const OperatorTuple scaled = transform(T, ComplexMatrix::Identity(d, d),
                                           ComplexMatrix::Identity(d, d), Complex(0.0, -3.7));
    for (double p : {0.5, 1.5, 3.0}) {
      const InequalityReport base = hk_ntuple(T, p);
      const InequalityReport r = hk_ntuple(rotated, p);
      CHECK(r.satisfied == base.satisfied);
      CHECK(std::abs(r.margin - base.margin) <= 1e-9);
      CHECK(hk_ntuple(scaled, p).satisfied == base.satisfied);
    }
    for (double p : {1.5, 3.0}) {
      const InequalityReport base = ak(T, p);
      CHECK(std::abs(ak(rotated, p).margin - base.margin) <= 1e-9);
      CHECK(ak(scaled, p).satisfied == base.satisfied);
    }
  }
}

TEST_CASE("property: ak margin shrinks with the distance to the equal tuple") {
  std::vector<double> margins;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    EnsembleSpec s;
    s.kind = EnsembleKind::near_equal;
    s.n = 3;
    s.d = 3;
    s.seed = 950;
    s.epsilon = eps;
    margins.push_back(std::abs(ak(generate(s), 1.5).margin));
  }
  CHECK(margins[0] > margins[1]);
  CHECK(margins[1] > margins[2]);
}

TEST_CASE("property: every inequality holds across kinds and grid exponents") {
  for (int k = 0; k < 56; ++k) {
    const auto T = random_tuple(960 + k, 2 + k % 4, 1 + k % 5, kKinds[k % 7]);
    for (double p : {0.5, 1.0, 1.3, 2.5, 4.0}) {
      CHECK(hk_ntuple(T, p).satisfied);
      const ClarksonReports c = clarkson_pair(T[0], T[1], p);
      CHECK(c.lower.satisfied);
      CHECK(c.upper.satisfied);
      if (p >= 1.0) CHECK(bcl(T[0], T[1], p).satisfied);
      if (p > 1.0) {
        CHECK(mccarthy(T[0], T[1], p).satisfied);
        CHECK(ak(T, p).satisfied);
        CHECK(cm(T, p).satisfied);
      }
    }
  }
}
