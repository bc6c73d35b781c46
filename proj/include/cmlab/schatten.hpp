#pragma once

#include <limits>

#include "cmlab/matcore.hpp"
#include "cmlab/report.hpp"

namespace cmlab {

/// A Schatten exponent p in (0, inf]. The dual q is only defined for p > 1.
class SchattenExponent {
 public:
  explicit SchattenExponent(double p);
  static SchattenExponent infinity() { return SchattenExponent(kInf); }

  double p() const { return p_; }
  bool is_infinite() const { return p_ == kInf; }
  bool is_quasi() const { return p_ < 1.0; }
  bool has_dual() const { return p_ > 1.0; }
  /// q = p / (p - 1); q = 1 for p = inf. Throws DomainError when p <= 1.
  double dual() const;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

 private:
  double p_;
};

struct NormValue {
  double value = 0.0;
  double p = 0.0;
  bool is_quasi = false;
};

/// (sum_j s_j^p)^{1/p}; s_1 for p = inf. Singular values below the relative
/// zero threshold count as exact zeros.
NormValue schatten_norm(const ComplexMatrix& X, SchattenExponent p,
                        const Tolerances& tol = default_tolerances());

/// ||X||_p^p = sum_j s_j^p (finite p only).
double schatten_power_sum(const ComplexMatrix& X, double p,
                          const Tolerances& tol = default_tolerances());

/// Same as schatten_power_sum but from an already computed spectrum.
double power_sum(const SingularSpectrum& s, double p, const Tolerances& tol = default_tolerances());

/// (sum s^p)^{1/p}, scaled by max s so large p cannot overflow while the norm is finite.
double spectrum_norm(const SingularSpectrum& s, double p,
                     const Tolerances& tol = default_tolerances());

double dual_exponent(double p);

Complex trace_pairing(const ComplexMatrix& Y, const ComplexMatrix& B);

/// |tr(XY)| <= ||X||_p ||Y||_q.
InequalityReport holder_check(const ComplexMatrix& X, const ComplexMatrix& Y, double p,
                              const Tolerances& tol = default_tolerances());

}  // namespace cmlab
