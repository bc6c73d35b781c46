#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cmlab/matcore.hpp"
#include "cmlab/tuple.hpp"

namespace cmlab {

// Unitary-orbit form of the n-tuple Clarkson inequality:
//
//   U |sum A_i|^p U^* + sum_{i<j} U_ij |A_i - A_j|^p U_ij^*  <=  n^{p-1} sum |A_i|^p
//
// for p > 2 (reversed for 0 < p <= 2). Proven for n = 2; open for n > 2.

enum class Direction {
  upper,     // p > 2: LHS <= RHS
  reversed,  // 0 < p <= 2: LHS >= RHS
};

std::string_view to_string(Direction direction);

struct ConjectureInstance {
  OperatorTuple tuple;
  double p = 3.0;
  Direction direction = Direction::upper;

  /// Picks the direction from p. Throws DomainError for p <= 0, InputError for n < 2.
  static ConjectureInstance make(OperatorTuple tuple, double p);
};

/// Number of unitaries an instance needs: n(n-1)/2 + 1.
std::size_t unitary_count(const ConjectureInstance& I);

struct ConjectureSides {
  ComplexMatrix lhs;
  ComplexMatrix rhs;
};

/// The p-th powers entering the inequality, computed once per instance.
struct ConjectureTerms {
  std::vector<ComplexMatrix> terms;  // |sum A|^p, then |A_i - A_j|^p in index_pairs order
  ComplexMatrix rhs;                 // n^{p-1} sum |A_i|^p
};
ConjectureTerms conjecture_terms(const ConjectureInstance& I);

/// Throws InputError unless unitaries has the right count and dimension.
ConjectureSides conjecture_sides(const ConjectureInstance& I,
                                 std::span<const ComplexMatrix> unitaries);

/// lambda_max(LHS - RHS) for the upper direction, lambda_max(RHS - LHS) for reversed.
/// Feasible iff <= 0 (within tolerance).
double conjecture_residual(const ConjectureInstance& I, std::span<const ComplexMatrix> unitaries);

struct NecessaryConditions {
  // (a) trace form; restates the scalar n-tuple Clarkson inequality
  double trace_lhs = 0.0;
  double trace_rhs = 0.0;
  bool trace_ok = true;
  // (b) Weyl eigenvalue domination per term
  double worst_weyl_excess = 0.0;
  bool weyl_ok = true;

  bool passed() const { return trace_ok && weyl_ok; }
};

NecessaryConditions necessary_conditions(const ConjectureInstance& I,
                                         const Tolerances& tol = default_tolerances());

enum class CertificateStatus { feasible, unresolved, necessary_condition_violated };
std::string_view to_string(CertificateStatus status);

struct FeasibilityCertificate {
  std::vector<ComplexMatrix> unitaries;
  double residual = 0.0;
  CertificateStatus status = CertificateStatus::unresolved;
  int iterations = 0;  // iteration (within the winning restart) at which the residual was reached
  int restart = 0;
  std::uint64_t seed = 0;
  NecessaryConditions conditions;
};

struct SearchOptions {
  int budget = 2000;
  int restarts = 8;
  std::uint64_t seed = 0;
  double tol_feasibility = default_tolerances().feasibility;
};

FeasibilityCertificate unitary_search(const ConjectureInstance& I, const SearchOptions& options);

/// n = 2 specialisation; the certificate holds U, V.
FeasibilityCertificate bl_two_check(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                                    int budget, std::uint64_t seed,
                                    int restarts = SearchOptions{}.restarts);

/// Re-derives the residual from scratch and checks the Loewner relation;
/// independent of the search path.
bool verify_certificate(const ConjectureInstance& I, const FeasibilityCertificate& cert,
                        double tol);

}  // namespace cmlab
