#include "cmlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmlab/errors.hpp"

namespace cmlab {

namespace {

double max_abs(const ComplexMatrix& X) {
  return X.size() ? X.cwiseAbs().maxCoeff() : 0.0;
}

void require_hermitian(const ComplexMatrix& H, const Tolerances& tol, const char* who) {
  require_square_finite(H, who);
  if (!is_hermitian(H, tol.structure)) {
    throw DomainError(std::string(who) + ": matrix is not Hermitian");
  }
}

// Map a Hermitian matrix through a scalar function of its eigenvalues.
template <typename F>
ComplexMatrix spectral_map(const HermEig& eig, F&& fn) {
  const Eigen::Index d = eig.values.size();
  Eigen::VectorXcd mapped(d);
  for (Eigen::Index k = 0; k < d; ++k) mapped(k) = fn(eig.values(k));
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

void require_square_finite(const ComplexMatrix& X, const char* who) {
  if (X.rows() != X.cols() || X.rows() == 0) {
    throw InputError(std::string(who) + ": expected a non-empty square matrix, got " +
                     std::to_string(X.rows()) + "x" + std::to_string(X.cols()));
  }
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      if (!std::isfinite(X(i, j).real()) || !std::isfinite(X(i, j).imag())) {
        throw InputError(std::string(who) + ": non-finite entry");
      }
    }
  }
}

bool is_hermitian(const ComplexMatrix& H, double tol) {
  if (H.rows() != H.cols()) return false;
  return max_abs(H - H.adjoint()) <= tol * std::max(1.0, max_abs(H));
}

bool is_unitary(const ComplexMatrix& U, double tol) {
  if (U.rows() != U.cols()) return false;
  const ComplexMatrix gram = U.adjoint() * U;
  return max_abs(gram - ComplexMatrix::Identity(U.rows(), U.cols())) <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& H) {
  return (H + H.adjoint()) * 0.5;
}

SvdResult svd(const ComplexMatrix& X) {
  require_square_finite(X, "svd");
  // Jacobi is slow for large matrices but accurate for the small ones used here.
  Eigen::JacobiSVD<ComplexMatrix> solver(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdResult{solver.matrixU(), SingularSpectrum{solver.singularValues()},
                   solver.matrixV()};
}

SingularSpectrum singular_values(const ComplexMatrix& X) {
  require_square_finite(X, "singular_values");
  Eigen::JacobiSVD<ComplexMatrix> solver(X);
  return SingularSpectrum{solver.singularValues()};
}

PolarParts polar(const ComplexMatrix& X, PolarSide side) {
  const SvdResult f = svd(X);
  const auto sigma = f.spectrum.values.cast<Complex>().asDiagonal();
  PolarParts parts;
  parts.side = side;
  parts.isometry = f.left * f.right.adjoint();
  if (side == PolarSide::left) {
    parts.modulus = f.right * sigma * f.right.adjoint();
  } else {
    parts.modulus = f.left * sigma * f.left.adjoint();
  }
  return parts;
}

HermEig herm_eig(const ComplexMatrix& H, const Tolerances& tol) {
  require_hermitian(H, tol, "herm_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(H));
  const Eigen::Index d = H.rows();
  HermEig out{RealVector(d), ComplexMatrix(d, d)};
  // Eigen returns ascending order
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = solver.eigenvalues()(d - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  }
  return out;
}

RealVector herm_eigvals(const ComplexMatrix& H, const Tolerances& tol) {
  require_hermitian(H, tol, "herm_eigvals");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(H),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

ComplexMatrix psd_power(const ComplexMatrix& P, Complex t, const Tolerances& tol) {
  const HermEig eig = herm_eig(P, tol);
  const double s_max = std::max(0.0, eig.values.size() ? eig.values(0) : 0.0);
  const double zero = tol.zero_rel * s_max;
  const double neg_floor = -tol.structure * std::max(1.0, s_max);
  if (eig.values.size() && eig.values.minCoeff() < neg_floor) {
    throw DomainError("psd_power: matrix is not positive semidefinite");
  }
  const bool has_zero = (eig.values.array() <= zero).any();
  if (t.real() <= 0.0 && has_zero) {
    throw DomainError("psd_power: non-positive exponent with a zero eigenvalue");
  }
  return spectral_map(eig, [&](double s) -> Complex {
    if (s <= zero) return Complex(0.0);
    return std::exp(t * std::log(s));
  });
}

ComplexMatrix abs_power(const ComplexMatrix& X, Complex t, const Tolerances& tol) {
  if (t.real() < 0.0 || t == Complex(0.0)) {
    throw DomainError("abs_power: exponent must have Re(t) >= 0 and t != 0");
  }
  const SvdResult f = svd(X);
  const double zero = tol.zero_rel * f.spectrum.max();
  const Eigen::Index d = X.rows();
  Eigen::VectorXcd mapped(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double s = f.spectrum.values(k);
    mapped(k) = s <= zero ? Complex(0.0) : std::exp(t * std::log(s));
  }
  return f.right * mapped.asDiagonal() * f.right.adjoint();
}

LoewnerResult loewner_leq(const ComplexMatrix& X, const ComplexMatrix& Z, double tol) {
  require_hermitian(X, default_tolerances(), "loewner_leq");
  require_hermitian(Z, default_tolerances(), "loewner_leq");
  if (X.rows() != Z.rows()) throw InputError("loewner_leq: dimension mismatch");
  const RealVector ev = herm_eigvals(hermitian_part(Z - X));
  const double witness = ev(ev.size() - 1);
  return LoewnerResult{witness >= -tol, witness};
}

ComplexMatrix expm_skew(const ComplexMatrix& K) {
  require_square_finite(K, "expm_skew");
  // K = -iH with H = iK Hermitian, so exp(K) = Q diag(exp(-i theta)) Q^dagger.
  const ComplexMatrix H = hermitian_part(Complex(0.0, 1.0) * K);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(H);
  const Eigen::Index d = K.rows();
  Eigen::VectorXcd phases(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    phases(k) = std::exp(Complex(0.0, -solver.eigenvalues()(k)));
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace cmlab
