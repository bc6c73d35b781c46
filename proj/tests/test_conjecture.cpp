#include <doctest.h>

#include <cmath>

#include "cmlab/conjecture.hpp"
#include "cmlab/errors.hpp"
#include "cmlab/inequalities.hpp"
#include "helpers.hpp"

using namespace cmlab;
using testing::diag;
using testing::max_abs;
using testing::random_tuple;

namespace {

std::vector<ComplexMatrix> identities(std::size_t count, int d) {
  return std::vector<ComplexMatrix>(count, ComplexMatrix::Identity(d, d));
}

}  // namespace

TEST_CASE("conjecture_sides: examples") {
  const auto A = random_tuple(71, 1, 3)[0];
  const auto I = ConjectureInstance::make(OperatorTuple({A, A}), 3.0);
  const ConjectureSides s = conjecture_sides(I, identities(2, 3));
  CHECK(max_abs(s.lhs - s.rhs) < 1e-10 * max_abs(s.rhs));
  CHECK(max_abs(s.lhs - 8.0 * abs_power(A, 3.0)) < 1e-10 * max_abs(s.rhs));

  const auto Z = ConjectureInstance::make(
      OperatorTuple({ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)}), 3.0);
  const ConjectureSides zs = conjecture_sides(Z, identities(2, 2));
  CHECK(max_abs(zs.lhs) == 0.0);
  CHECK(max_abs(zs.rhs) == 0.0);

  CHECK_THROWS_AS(conjecture_sides(I, identities(3, 3)), InputError);
}

TEST_CASE("conjecture_sides: commuting diagonal tuple gives scalar Clarkson per entry") {
  const ComplexMatrix a = diag({1.0, 2.0, -0.5}), b = diag({0.3, -1.0, 2.0});
  const double p = 3.0;
  const auto I = ConjectureInstance::make(OperatorTuple({a, b}), p);
  const ConjectureSides s = conjecture_sides(I, identities(2, 3));
  for (int k = 0; k < 3; ++k) {
    const double x = a(k, k).real(), y = b(k, k).real();
    const double lhs = std::pow(std::abs(x + y), p) + std::pow(std::abs(x - y), p);
    const double rhs = std::pow(2.0, p - 1.0) * (std::pow(std::abs(x), p) + std::pow(std::abs(y), p));
    CHECK(s.lhs(k, k).real() == doctest::Approx(lhs));
    CHECK(s.rhs(k, k).real() == doctest::Approx(rhs));
  }
}

TEST_CASE("ConjectureInstance: direction and errors") {
  const auto T = random_tuple(72, 2, 2);
  CHECK(ConjectureInstance::make(T, 3.0).direction == Direction::upper);
  CHECK(ConjectureInstance::make(T, 2.0).direction == Direction::reversed);
  CHECK(ConjectureInstance::make(T, 0.5).direction == Direction::reversed);
  CHECK(unitary_count(ConjectureInstance::make(random_tuple(72, 4, 2), 3.0)) == 7);
  CHECK_THROWS_AS(ConjectureInstance::make(T, 0.0), DomainError);
  CHECK_THROWS_AS(ConjectureInstance::make(random_tuple(72, 1, 2), 3.0), InputError);
}

TEST_CASE("necessary_conditions: equality and trace form") {
  const auto A = random_tuple(73, 1, 3)[0];
  const NecessaryConditions eq =
      necessary_conditions(ConjectureInstance::make(OperatorTuple({A, A, A}), 3.0));
  CHECK(eq.passed());
  CHECK(eq.trace_lhs == doctest::Approx(eq.trace_rhs).epsilon(1e-10));

  // trace form restates the scalar n-tuple inequality
  const auto H = random_tuple(74, 2, 3, EnsembleKind::hermitian);
  const NecessaryConditions nc = necessary_conditions(ConjectureInstance::make(H, 3.0));
  const InequalityReport hk = hk_ntuple(H, 3.0);
  CHECK(nc.trace_ok);
  CHECK(nc.trace_lhs == doctest::Approx(hk.lhs).epsilon(1e-10));
  CHECK(nc.trace_rhs == doctest::Approx(hk.rhs).epsilon(1e-10));

  const auto R = random_tuple(75, 3, 3, EnsembleKind::low_rank);
  CHECK(necessary_conditions(ConjectureInstance::make(R, 3.0)).passed());
}

TEST_CASE("unitary_search: identity start suffices in equality and diagonal cases") {
  const auto A = random_tuple(76, 1, 3)[0];
  const auto equal = ConjectureInstance::make(OperatorTuple({A, A}), 3.0);
  const FeasibilityCertificate c = unitary_search(equal, SearchOptions{});
  CHECK(c.status == CertificateStatus::feasible);
  CHECK(c.iterations == 0);
  CHECK(c.residual <= 1e-12 * max_abs(conjecture_terms(equal).rhs));

  const ComplexMatrix d1 = diag({1.0, 0.5}), d2 = diag({1.0, -2.0});
  const FeasibilityCertificate dc = bl_two_check(d1, d2, 4.0, 2000, 1);
  CHECK(dc.status == CertificateStatus::feasible);
  CHECK(dc.iterations == 0);
  CHECK(dc.restart == 0);

  CHECK_THROWS_AS(unitary_search(equal, SearchOptions{0, 8, 0, 1e-7}), InputError);
}

TEST_CASE("bl_two_check: random pairs reach verified feasibility") {
  for (int k = 0; k < 10; ++k) {
    const auto T = random_tuple(770 + k, 2, 2 + k % 3, k % 2 ? EnsembleKind::hermitian
                                                              : EnsembleKind::ginibre);
    const double p = k % 2 ? 2.5 : 3.0;
    const FeasibilityCertificate c = bl_two_check(T[0], T[1], p, 2000, 9);
    CHECK(c.status == CertificateStatus::feasible);
    CHECK(c.residual <= 1e-7);
    CHECK(verify_certificate(ConjectureInstance::make(T, p), c, 1e-7));
    for (const auto& U : c.unitaries) CHECK(is_unitary(U, 1e-9));
  }
}

TEST_CASE("bl_two_check: unitary equal pair and zero second operator") {
  Rng rng(78);
  const ComplexMatrix U = haar_unitary(rng, 3);
  const FeasibilityCertificate c = bl_two_check(U, U, 4.0, 2000, 1);
  CHECK(c.status == CertificateStatus::feasible);
  CHECK(c.residual <= 1e-12);

  // |A|^p + |A|^p <= 2^{p-1}|A|^p holds for p >= 2, with equality at p = 2
  const ComplexMatrix A = ginibre(rng, 2, 2);
  const FeasibilityCertificate z = bl_two_check(A, ComplexMatrix::Zero(2, 2), 3.0, 2000, 1);
  CHECK(z.status == CertificateStatus::feasible);
}

TEST_CASE("verify_certificate rejects a tampered certificate") {
  const auto T = random_tuple(79, 2, 3);
  const auto I = ConjectureInstance::make(T, 3.0);
  FeasibilityCertificate c = unitary_search(I, SearchOptions{});
  REQUIRE(c.status == CertificateStatus::feasible);
  c.unitaries.pop_back();
  CHECK_FALSE(verify_certificate(I, c, 1e-7));
}
