#include <doctest.h>

#include <cmath>

#include "cmlab/errors.hpp"
#include "cmlab/matcore.hpp"
#include "helpers.hpp"

using namespace cmlab;
using testing::diag;
using testing::mat2;
using testing::max_abs;

TEST_CASE("svd: spectrum examples") {
  auto s = singular_values(diag({3.0, 4.0})).values;
  CHECK(s(0) == doctest::Approx(4.0));
  CHECK(s(1) == doctest::Approx(3.0));

  s = singular_values(mat2(0.0, 2.0, 0.0, 0.0)).values;
  CHECK(s(0) == doctest::Approx(2.0));
  CHECK(std::abs(s(1)) < 1e-15);

  // all-ones rank one: s1 = Frobenius norm = 2
  s = singular_values(ComplexMatrix::Ones(2, 2)).values;
  CHECK(s(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(s(1)) < 1e-14);
}

TEST_CASE("svd: reconstruction and ordering on random input") {
  Rng rng(11);
  for (int d : {1, 2, 5, 8}) {
    const ComplexMatrix X = ginibre(rng, d, d);
    const SvdResult f = svd(X);
    const ComplexMatrix back = f.left * f.spectrum.values.cast<Complex>().asDiagonal() *
                               f.right.adjoint();
    CHECK(max_abs(back - X) < 1e-12);
    for (Eigen::Index k = 1; k < f.spectrum.size(); ++k) {
      CHECK(f.spectrum.values(k - 1) >= f.spectrum.values(k));
    }
  }
}

TEST_CASE("svd: non-finite and non-square input is rejected") {
  ComplexMatrix X = ComplexMatrix::Identity(2, 2);
  X(0, 1) = std::nan("");
  CHECK_THROWS_AS(svd(X), InputError);
  CHECK_THROWS_AS(svd(ComplexMatrix::Zero(2, 3)), InputError);
}

TEST_CASE("polar: examples") {
  const PolarParts a = polar(diag({-2.0, 1.0}), PolarSide::left);
  CHECK(max_abs(a.isometry - diag({-1.0, 1.0})) < 1e-14);
  CHECK(max_abs(a.modulus - diag({2.0, 1.0})) < 1e-14);

  const PolarParts z = polar(ComplexMatrix::Zero(2, 2), PolarSide::left);
  CHECK(max_abs(z.isometry - ComplexMatrix::Identity(2, 2)) < 1e-14);
  CHECK(max_abs(z.modulus) == 0.0);

  const ComplexMatrix N = mat2(0.0, 1.0, 0.0, 0.0);
  const PolarParts n = polar(N, PolarSide::left);
  CHECK(max_abs(n.modulus - diag({0.0, 1.0})) < 1e-14);
  CHECK(is_unitary(n.isometry, 1e-12));
  CHECK(max_abs(n.reconstruct() - N) < 1e-14);
}

TEST_CASE("polar: both sides reconstruct with unitary factor and PSD modulus") {
  Rng rng(12);
  for (int d : {1, 3, 6}) {
    const ComplexMatrix X = ginibre(rng, d, d);
    for (PolarSide side : {PolarSide::left, PolarSide::right}) {
      const PolarParts P = polar(X, side);
      CHECK(max_abs(P.reconstruct() - X) < 1e-12);
      CHECK(is_unitary(P.isometry, 1e-12));
      CHECK(is_hermitian(P.modulus, 1e-12));
      CHECK(herm_eigvals(P.modulus).minCoeff() > -1e-12);
    }
  }
}

TEST_CASE("psd_power: examples") {
  CHECK(max_abs(psd_power(diag({4.0}), 0.5) - diag({2.0})) < 1e-15);
  const Complex expected(std::cos(1.0), std::sin(1.0));
  CHECK(std::abs(psd_power(diag({std::exp(1.0)}), Complex(0.0, 1.0))(0, 0) - expected) < 1e-15);
  CHECK(max_abs(psd_power(diag({0.0, 1.0}), 0.7) - diag({0.0, 1.0})) < 1e-15);
}

TEST_CASE("psd_power: errors") {
  CHECK_THROWS_AS(psd_power(diag({-1.0, 1.0}), 0.5), DomainError);
  CHECK_THROWS_AS(psd_power(mat2(1.0, 2.0, 0.0, 1.0), 0.5), DomainError);
  CHECK_THROWS_AS(psd_power(diag({0.0, 1.0}), -0.5), DomainError);
  CHECK_THROWS_AS(psd_power(diag({0.0, 1.0}), Complex(0.0, 1.0)), DomainError);
  CHECK_NOTHROW(psd_power(diag({2.0, 1.0}), -0.5));
}

TEST_CASE("psd_power: semigroup law P^s P^t = P^{s+t}") {
  Rng rng(13);
  const ComplexMatrix G = ginibre(rng, 4, 4);
  const ComplexMatrix P = G.adjoint() * G;
  const Complex s(0.3, 0.7), t(1.1, -0.4);
  CHECK(max_abs(psd_power(P, s) * psd_power(P, t) - psd_power(P, s + t)) < 1e-9 * max_abs(P));
}

TEST_CASE("abs_power agrees with psd_power of X^dagger X") {
  Rng rng(14);
  const ComplexMatrix X = ginibre(rng, 5, 5);
  const ComplexMatrix viaPsd = psd_power(X.adjoint() * X, 0.75);
  CHECK(max_abs(abs_power(X, 1.5) - viaPsd) < 1e-10);
  CHECK_THROWS_AS(abs_power(X, -1.0), DomainError);
  CHECK_THROWS_AS(abs_power(X, 0.0), DomainError);
}

TEST_CASE("herm_eigvals: examples and errors") {
  auto e = herm_eigvals(diag({1.0, 5.0, 3.0}));
  CHECK(e(0) == doctest::Approx(5.0));
  CHECK(e(1) == doctest::Approx(3.0));
  CHECK(e(2) == doctest::Approx(1.0));

  e = herm_eigvals(mat2(0.0, 1.0, 1.0, 0.0));
  CHECK(e(0) == doctest::Approx(1.0));
  CHECK(e(1) == doctest::Approx(-1.0));

  e = herm_eigvals(ComplexMatrix::Identity(3, 3));
  for (int k = 0; k < 3; ++k) CHECK(e(k) == doctest::Approx(1.0));

  CHECK_THROWS_AS(herm_eigvals(mat2(0.0, 1.0, 0.0, 0.0)), DomainError);
}

TEST_CASE("loewner_leq: examples") {
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  LoewnerResult r = loewner_leq(ComplexMatrix::Zero(2, 2), I, 1e-12);
  CHECK(r.holds);
  CHECK(r.witness == doctest::Approx(1.0));

  r = loewner_leq(diag({2.0, 0.0}), I, 1e-12);
  CHECK_FALSE(r.holds);
  CHECK(r.witness == doctest::Approx(-1.0));

  r = loewner_leq(I, I, 1e-12);
  CHECK(r.holds);
  CHECK(std::abs(r.witness) < 1e-15);

  CHECK_THROWS_AS(loewner_leq(mat2(0.0, 1.0, 0.0, 0.0), I, 1e-12), DomainError);
}

TEST_CASE("expm_skew produces unitaries") {
  Rng rng(15);
  const ComplexMatrix G = ginibre(rng, 4, 4);
  const ComplexMatrix K = (G - G.adjoint()) / 2.0;
  CHECK(is_unitary(expm_skew(K), 1e-12));
  CHECK(max_abs(expm_skew(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)) < 1e-15);
}
