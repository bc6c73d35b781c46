#include "cmlab/conjecture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cmlab/ensembles.hpp"
#include "cmlab/errors.hpp"

namespace cmlab {

std::string_view to_string(Direction direction) {
  return direction == Direction::upper ? "upper" : "reversed";
}

std::string_view to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::feasible:
      return "feasible";
    case CertificateStatus::unresolved:
      return "unresolved";
    case CertificateStatus::necessary_condition_violated:
      return "necessary_condition_violated";
  }
  return "unknown";
}

ConjectureInstance ConjectureInstance::make(OperatorTuple tuple, double p) {
  if (std::isnan(p) || !(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("conjecture: p must be finite and positive");
  }
  if (tuple.size() < 2) throw InputError("conjecture: needs n >= 2 matrices");
  ConjectureInstance I;
  I.tuple = std::move(tuple);
  I.p = p;
  I.direction = p > 2.0 ? Direction::upper : Direction::reversed;
  return I;
}

std::size_t unitary_count(const ConjectureInstance& I) { return pair_count(I.tuple.size()) + 1; }

ConjectureTerms conjecture_terms(const ConjectureInstance& I) {
  ConjectureTerms t;
  t.terms.push_back(abs_power(I.tuple.sum(), I.p));
  for (const auto& diff : I.tuple.pairwise_differences()) t.terms.push_back(abs_power(diff, I.p));
  const int d = I.tuple.dim();
  t.rhs = ComplexMatrix::Zero(d, d);
  for (const auto& A : I.tuple) t.rhs += abs_power(A, I.p);
  t.rhs *= std::pow(static_cast<double>(I.tuple.n()), I.p - 1.0);
  return t;
}

namespace {

void require_unitaries(const ConjectureInstance& I, std::span<const ComplexMatrix> unitaries) {
  if (unitaries.size() != unitary_count(I)) {
    throw InputError("conjecture: expected " + std::to_string(unitary_count(I)) +
                     " unitaries, got " + std::to_string(unitaries.size()));
  }
  for (const auto& U : unitaries) {
    if (U.rows() != I.tuple.dim() || U.cols() != I.tuple.dim()) {
      throw InputError("conjecture: unitary dimension mismatch");
    }
  }
}

ComplexMatrix orbit_sum(const ConjectureTerms& t, std::span<const ComplexMatrix> unitaries) {
  ComplexMatrix lhs = ComplexMatrix::Zero(t.rhs.rows(), t.rhs.cols());
  for (std::size_t m = 0; m < t.terms.size(); ++m) {
    lhs += unitaries[m] * t.terms[m] * unitaries[m].adjoint();
  }
  return hermitian_part(lhs);
}

double sign_of(Direction direction) { return direction == Direction::upper ? 1.0 : -1.0; }

// largest eigenvalue of sign * (LHS - RHS)
double residual_from(const ConjectureTerms& t, Direction dir,
                     std::span<const ComplexMatrix> unitaries) {
  const ComplexMatrix H = sign_of(dir) * (orbit_sum(t, unitaries) - t.rhs);
  return herm_eigvals(hermitian_part(H))(0);
}

double spectral_norm(const ComplexMatrix& H) {
  const RealVector ev = herm_eigvals(hermitian_part(H));
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace

ConjectureSides conjecture_sides(const ConjectureInstance& I,
                                 std::span<const ComplexMatrix> unitaries) {
  require_unitaries(I, unitaries);
  const ConjectureTerms t = conjecture_terms(I);
  return ConjectureSides{orbit_sum(t, unitaries), t.rhs};
}

double conjecture_residual(const ConjectureInstance& I, std::span<const ComplexMatrix> unitaries) {
  require_unitaries(I, unitaries);
  return residual_from(conjecture_terms(I), I.direction, unitaries);
}

NecessaryConditions necessary_conditions(const ConjectureInstance& I, const Tolerances& tol) {
  const ConjectureTerms t = conjecture_terms(I);
  NecessaryConditions nc;
  for (const auto& X : t.terms) nc.trace_lhs += X.trace().real();
  nc.trace_rhs = t.rhs.trace().real();
  const double small = I.direction == Direction::upper ? nc.trace_lhs : nc.trace_rhs;
  const double large = I.direction == Direction::upper ? nc.trace_rhs : nc.trace_lhs;
  nc.trace_ok = (large - small) / std::max(1.0, large) >= -tol.margin;

  const RealVector rhs_ev = herm_eigvals(t.rhs);
  std::vector<RealVector> term_ev;
  double scale = std::max(1.0, spectral_norm(t.rhs));
  for (const auto& X : t.terms) {
    term_ev.push_back(herm_eigvals(X));
    scale = std::max(scale, term_ev.back()(0));
  }
  nc.worst_weyl_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < t.terms.size(); ++m) {
    // upper:    U X_m U^* <= sum <= RHS       =>  lambda_k(X_m) <= lambda_k(RHS)
    // reversed: RHS <= sum of rotated terms  =>  lambda_k(RHS) <= lambda_k(X_m) + sum_{m' != m} lambda_1(X_m')
    double others = 0.0;
    for (std::size_t o = 0; o < t.terms.size(); ++o)
      if (o != m) others += term_ev[o](0);
    for (Eigen::Index k = 0; k < rhs_ev.size(); ++k) {
      const double excess = I.direction == Direction::upper
                                ? term_ev[m](k) - rhs_ev(k)
                                : rhs_ev(k) - term_ev[m](k) - others;
      nc.worst_weyl_excess = std::max(nc.worst_weyl_excess, excess / scale);
    }
  }
  nc.weyl_ok = nc.worst_weyl_excess <= tol.rtol;
  return nc;
}

namespace {

// Descent on the log-sum-exp smoothing of lambda_max over the product of unitary groups.
class OrbitSearch {
 public:
  OrbitSearch(const ConjectureTerms& terms, Direction dir)
      : t_(terms), sign_(sign_of(dir)), dir_(dir) {
    scale_ = std::max(1e-300, spectral_norm(t_.rhs));
    for (const auto& X : t_.terms) scale_ = std::max(scale_, spectral_norm(X));
  }

  struct Eval {
    double g = 0.0;       // lambda_max
    double smooth = 0.0;  // (1/beta) log sum exp(beta lambda_k)
    HermEig eig;
    std::vector<ComplexMatrix> rotated;
  };

  Eval evaluate(const std::vector<ComplexMatrix>& U, double beta) const {
    Eval e;
    ComplexMatrix H = -t_.rhs;
    for (std::size_t m = 0; m < U.size(); ++m) {
      e.rotated.push_back(hermitian_part(U[m] * t_.terms[m] * U[m].adjoint()));
      H += e.rotated.back();
    }
    e.eig = herm_eig(hermitian_part(sign_ * H));
    e.g = e.eig.values(0);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < e.eig.values.size(); ++k) {
      acc += std::exp(beta * (e.eig.values(k) - e.g));
    }
    e.smooth = e.g + std::log(acc) / beta;
    return e;
  }

  // Riemannian gradient of the smoothed objective: K_m = sign [M_m, P], P = sum_k w_k v_k v_k^*
  std::vector<ComplexMatrix> descent(const Eval& e, double beta) const {
    const Eigen::Index d = e.eig.values.size();
    RealVector w(d);
    for (Eigen::Index k = 0; k < d; ++k) w(k) = std::exp(beta * (e.eig.values(k) - e.g));
    w /= w.sum();
    const ComplexMatrix P =
        e.eig.vectors * w.cast<Complex>().asDiagonal() * e.eig.vectors.adjoint();
    std::vector<ComplexMatrix> K;
    for (const auto& M : e.rotated) K.push_back(sign_ * (M * P - P * M));
    return K;
  }

  double scale() const { return scale_; }
  Direction direction() const { return dir_; }

 private:
  const ConjectureTerms& t_;
  double sign_;
  Direction dir_;
  double scale_;
};

std::vector<ComplexMatrix> reorthonormalize(const std::vector<ComplexMatrix>& U) {
  std::vector<ComplexMatrix> out;
  for (const auto& u : U) out.push_back(polar(u, PolarSide::left).isometry);
  return out;
}

// Rotate each term into the eigenbasis of the RHS with matching eigenvalue order.
std::vector<ComplexMatrix> aligned_start(const ConjectureTerms& t) {
  const HermEig r = herm_eig(t.rhs);
  std::vector<ComplexMatrix> U;
  for (const auto& X : t.terms) U.push_back(r.vectors * herm_eig(X).vectors.adjoint());
  return U;
}

struct RestartResult {
  std::vector<ComplexMatrix> U;
  double g = std::numeric_limits<double>::infinity();
  int iteration = 0;
};

RestartResult descend(const OrbitSearch& search, std::vector<ComplexMatrix> U, int budget) {
  constexpr double kBetaStart = 8.0;
  constexpr double kBetaMax = 1e13;
  constexpr double kArmijo = 1e-4;
  double beta = kBetaStart / search.scale();
  double theta = 0.5;

  RestartResult best;
  auto current = search.evaluate(U, beta);
  best.U = U;
  best.g = current.g;
  for (int it = 1; it <= budget && best.g > 0.0; ++it) {
    const auto K = search.descent(current, beta);
    double knorm = 0.0;
    for (const auto& k : K) knorm += k.squaredNorm();
    knorm = std::sqrt(knorm);
    if (!(knorm > 1e-14 * search.scale())) {
      if (beta * search.scale() >= kBetaMax) break;
      beta *= 4.0;
      current = search.evaluate(U, beta);
      continue;
    }
    std::vector<ComplexMatrix> trial;
    trial.reserve(U.size());
    for (std::size_t m = 0; m < U.size(); ++m) {
      trial.push_back(expm_skew((theta / knorm) * K[m]) * U[m]);
    }
    auto next = search.evaluate(trial, beta);
    if (next.smooth <= current.smooth - kArmijo * theta * knorm) {
      U = std::move(trial);
      current = std::move(next);
      theta = std::min(2.0 * theta, 2.0);
      if (current.g < best.g) {
        best.g = current.g;
        best.U = U;
        best.iteration = it;
      }
    } else {
      theta *= 0.5;
      if (theta < 1e-12) {
        if (beta * search.scale() >= kBetaMax) break;
        beta *= 4.0;
        theta = 0.5;
        current = search.evaluate(U, beta);
      }
    }
  }
  return best;
}

}  // namespace

FeasibilityCertificate unitary_search(const ConjectureInstance& I, const SearchOptions& options) {
  if (options.budget <= 0) throw InputError("unitary_search: budget must be positive");
  if (options.restarts <= 0) throw InputError("unitary_search: restarts must be positive");
  FeasibilityCertificate cert;
  cert.seed = options.seed;
  cert.conditions = necessary_conditions(I);
  const int d = I.tuple.dim();
  const std::size_t count = unitary_count(I);
  if (!cert.conditions.passed()) {
    cert.status = CertificateStatus::necessary_condition_violated;
    cert.unitaries.assign(count, ComplexMatrix::Identity(d, d));
    cert.residual = conjecture_residual(I, cert.unitaries);
    return cert;
  }

  const ConjectureTerms terms = conjecture_terms(I);
  const OrbitSearch search(terms, I.direction);
  RestartResult best;
  int best_restart = 0;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<ComplexMatrix> start;
    if (r == 0) {
      start.assign(count, ComplexMatrix::Identity(d, d));
    } else if (r == 1) {
      start = aligned_start(terms);
    } else {
      Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
      for (std::size_t m = 0; m < count; ++m) start.push_back(haar_unitary(rng, d));
    }
    RestartResult result = descend(search, std::move(start), options.budget);
    // re-project and re-score so the certificate never relies on accumulated drift
    result.U = reorthonormalize(result.U);
    result.g = residual_from(terms, I.direction, result.U);
    if (result.g < best.g) {
      best = std::move(result);
      best_restart = r;
    }
    if (best.g <= 0.0) break;
  }
  cert.unitaries = std::move(best.U);
  cert.residual = best.g;
  cert.iterations = best.iteration;
  cert.restart = best_restart;
  cert.status = cert.residual <= options.tol_feasibility ? CertificateStatus::feasible
                                                         : CertificateStatus::unresolved;
  return cert;
}

FeasibilityCertificate bl_two_check(const ComplexMatrix& A, const ComplexMatrix& B, double p,
                                    int budget, std::uint64_t seed, int restarts) {
  const auto I = ConjectureInstance::make(OperatorTuple({A, B}), p);
  return unitary_search(I, SearchOptions{budget, restarts, seed, default_tolerances().feasibility});
}

bool verify_certificate(const ConjectureInstance& I, const FeasibilityCertificate& cert,
                        double tol) {
  if (cert.unitaries.size() != unitary_count(I)) return false;
  for (const auto& U : cert.unitaries)
    if (!is_unitary(U, default_tolerances().structure)) return false;
  const ConjectureSides sides = conjecture_sides(I, cert.unitaries);
  return I.direction == Direction::upper ? loewner_leq(sides.lhs, sides.rhs, tol).holds
                                         : loewner_leq(sides.rhs, sides.lhs, tol).holds;
}

}  // namespace cmlab
