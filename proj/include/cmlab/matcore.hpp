#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cmlab/tolerances.hpp"

namespace cmlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Singular values (or eigenvalues) sorted decreasingly.
struct SingularSpectrum {
  RealVector values;

  double max() const { return values.size() ? values(0) : 0.0; }
  Eigen::Index size() const { return values.size(); }
};

struct SvdResult {
  ComplexMatrix left;  // L
  SingularSpectrum spectrum;
  ComplexMatrix right;  // R, with X = L diag(s) R^dagger
};

enum class PolarSide { left, right };

/// Polar factors. side=left: X = isometry * modulus; side=right: X = modulus * isometry.
struct PolarParts {
  ComplexMatrix isometry;
  ComplexMatrix modulus;
  PolarSide side = PolarSide::left;

  ComplexMatrix reconstruct() const {
    return side == PolarSide::left ? ComplexMatrix(isometry * modulus)
                                   : ComplexMatrix(modulus * isometry);
  }
};

struct LoewnerResult {
  bool holds = false;
  double witness = 0.0;  // lambda_min(Z - X)

  explicit operator bool() const { return holds; }
};

/// Throws InputError unless X is square with finite entries.
void require_square_finite(const ComplexMatrix& X, const char* who);

bool is_hermitian(const ComplexMatrix& H, double tol);
bool is_unitary(const ComplexMatrix& U, double tol);

SvdResult svd(const ComplexMatrix& X);
SingularSpectrum singular_values(const ComplexMatrix& X);

PolarParts polar(const ComplexMatrix& X, PolarSide side);

/// Q diag(s^t) Q^dagger for Hermitian PSD P = Q diag(s) Q^dagger; 0^t = 0.
ComplexMatrix psd_power(const ComplexMatrix& P, Complex t,
                        const Tolerances& tol = default_tolerances());

/// |X|^t = (X^dagger X)^{t/2}, computed from the SVD rather than by squaring.
/// Re(t) >= 0, t != 0; the kernel of X is mapped to 0, including for purely
/// imaginary t (support-projection convention of the analytic continuation).
ComplexMatrix abs_power(const ComplexMatrix& X, Complex t,
                        const Tolerances& tol = default_tolerances());

/// Real eigenvalues of a Hermitian matrix, sorted decreasingly.
RealVector herm_eigvals(const ComplexMatrix& H, const Tolerances& tol = default_tolerances());

/// Hermitian eigendecomposition, eigenvalues decreasing, columns of `vectors` matching.
struct HermEig {
  RealVector values;
  ComplexMatrix vectors;
};
HermEig herm_eig(const ComplexMatrix& H, const Tolerances& tol = default_tolerances());

/// X <= Z in the Loewner order iff lambda_min(Z - X) >= -tol.
LoewnerResult loewner_leq(const ComplexMatrix& X, const ComplexMatrix& Z, double tol);

/// exp(K) for skew-Hermitian K; the result is unitary.
ComplexMatrix expm_skew(const ComplexMatrix& K);

ComplexMatrix hermitian_part(const ComplexMatrix& H);

}  // namespace cmlab
