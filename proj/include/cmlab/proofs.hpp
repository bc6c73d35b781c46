#pragma once

#include <span>
#include <vector>

#include "cmlab/inequalities.hpp"
#include "cmlab/matcore.hpp"
#include "cmlab/report.hpp"
#include "cmlab/tuple.hpp"

namespace cmlab {

/// Dual witnesses for B = sum A_i and every B_ij = A_i - A_j (i < j).
struct WitnessSet {
  ComplexMatrix Y;
  std::vector<ComplexMatrix> pairs;  // index_pairs(n) order
};

/// Point z = x + iy of the strip 1/2 <= x <= 1.
struct StripPoint {
  double x = 1.0;
  double y = 0.0;

  StripPoint() = default;
  StripPoint(double x_, double y_);
  Complex z() const { return {x, y}; }
};

struct InterpolationSample {
  StripPoint z;
  Complex f_value;
  double bound_at_x = 0.0;  // M1^{2x-1} M2^{2-2x}
};

/// Y = ||B||_p^{q-p} |B|^{p-1} U^* from the left polar decomposition B = U|B|,
/// so that tr(YB) = ||B||_p^q = ||Y||_q^p. Zero B gives the zero matrix.
ComplexMatrix dual_witness(const ComplexMatrix& B, double p,
                           const Tolerances& tol = default_tolerances());

WitnessSet witness_set(const OperatorTuple& T, double p,
                       const Tolerances& tol = default_tolerances());

/// The analytic interpolation family
///   A_k(z) = |A_k|^{pz} W_k,   Y(z) = ||Y||_q^{pz - q(1-z)} V |Y|^{q(1-z)},
///   f(z) = tr(Y(z) B(z) + sum_{i<j} Y_ij(z) B_ij(z)),
/// with the polar factors computed once. f(1/p) = tr(YB + sum Y_ij B_ij).
class AnalyticFamily {
 public:
  AnalyticFamily(const OperatorTuple& T, const WitnessSet& W, double p,
                 const Tolerances& tol = default_tolerances());

  Complex operator()(StripPoint z) const;

  /// The same f from its expansion sum_k c_k exp(a_k + lambda_k z), one term per
  /// pair of singular directions. Cheap; independent of operator().
  Complex exponential_sum(StripPoint z) const;
  std::size_t term_count() const { return terms_.size(); }

  double p() const { return p_; }
  double q() const { return q_; }
  int n() const { return static_cast<int>(a_.size()); }
  /// sum_k ||A_k||_p^p
  double a_mass() const { return a_mass_; }
  /// ||Y||_q^p + sum_{i<j} ||Y_ij||_q^p
  double y_mass() const { return y_mass_; }
  /// f(x + iy) is a finite sum of exponentials c e^{i w y}; an upper bound on
  /// max w - min w over its terms. Sets the y-resolution needed to see the peaks.
  double frequency_spread() const { return spread_; }

 private:
  // X = left diag(s) right^dagger
  struct Factored {
    ComplexMatrix left;
    RealVector s;
    ComplexMatrix right;
    double zero = 0.0;
    double q_norm = 0.0;  // only used for witnesses
  };
  static Factored factor(const ComplexMatrix& X, const Tolerances& tol);
  ComplexMatrix a_at(const Factored& a, Complex z) const;
  ComplexMatrix y_at(const Factored& y, Complex z) const;

  double p_;
  double q_;
  std::vector<Factored> a_;
  Factored y_;
  std::vector<Factored> y_pairs_;
  double a_mass_ = 0.0;
  double y_mass_ = 0.0;
  double spread_ = 0.0;

  struct Term {
    Complex coefficient;
    double offset;
    double lambda;
  };
  std::vector<Term> terms_;
  void expand(const Factored& y, const Factored& a, double sign);
};

Complex analytic_family_eval(const OperatorTuple& T, const WitnessSet& W, double p, StripPoint z,
                             const Tolerances& tol = default_tolerances());

/// M1 (x = 1) or M2 (x = 1/2) bound on |f(x + iy)|.
double boundary_bound(const OperatorTuple& T, const WitnessSet& W, double p, double x,
                      const Tolerances& tol = default_tolerances());

/// M1^{2(1/p - 1/2)} M2^{2(1 - 1/p)}.
double three_lines_bound(double M1, double M2, double p);

/// |tr(YB + sum Y_ij B_ij)| <= n^{1/q} (sum ||A_k||_p^p)^{1/p} (||Y||_q^p + sum ||Y_ij||_q^p)^{1/p}
/// for arbitrary Y, Y_ij.
InequalityReport pairing_bound_check(const OperatorTuple& T, const ComplexMatrix& Y,
                                     std::span<const ComplexMatrix> Y_pairs, double p,
                                     const Tolerances& tol = default_tolerances());

struct ConvexityScan {
  std::vector<InterpolationSample> samples;  // x-major, then y, in grid order
  std::vector<double> x_grid;
  std::vector<double> sup_abs;  // grid estimate of M(x)
  double M1 = 0.0;
  double M2 = 0.0;
  /// largest excess of log M(x_mid) over the chord of its neighbours (<= 0 if convex)
  double worst_midpoint_excess = 0.0;
  /// largest |f| - bound_at_x over all samples
  double worst_bound_excess = 0.0;
  bool convex = true;
  bool bounded = true;
};

ConvexityScan convexity_scan(const OperatorTuple& T, const WitnessSet& W, double p,
                             std::span<const double> x_grid, std::span<const double> y_grid,
                             const Tolerances& tol = default_tolerances());

std::vector<double> linspace(double lo, double hi, int count);

/// mu with ||mu||_p = 1 and tr(mu phi) = ||phi||_q, where 1/p + 1/q = 1.
ComplexMatrix norming_functional(const ComplexMatrix& phi, double q,
                                 const Tolerances& tol = default_tolerances());

/// x_i = (sum ||phi_i||_q^q)^{-1/p} ||phi_i||_q^{q-1} mu_i; sum ||x_i||_p^p = 1.
OperatorTuple duality_images(const OperatorTuple& Phi, double q,
                             const Tolerances& tol = default_tolerances());

/// n (sum ||phi_i||_q^q)^{p/q} <= ||sum phi_i||_q^p + sum_{i<j} ||phi_i - phi_j||_q^p, q >= 2.
InequalityReport ak_via_duality(const OperatorTuple& Phi, double q,
                                const Tolerances& tol = default_tolerances());

/// Every quantity in the duality argument, evaluated left to right.
struct DualityChain {
  OperatorTuple images;
  double image_mass = 0.0;        // sum ||x_i||_p^p, should be 1
  double target = 0.0;            // (sum ||phi_i||_q^q)^{1/q}
  double paired = 0.0;            // Re sum tr(x_i phi_i)
  double polarized = 0.0;         // Re [tr(sum x sum phi) + sum tr((x_i-x_j)(phi_i-phi_j))] / n
  double triangle_bound = 0.0;    // after |tr| <= ||.||_p ||.||_q termwise
  double holder_bound = 0.0;      // after Holder on the (n(n-1)/2 + 1)-vectors
  double final_bound = 0.0;       // (||sum phi||^p + sum ||phi_i - phi_j||^p)^{1/p} / n^{1/p}
  InequalityReport images_ak;     // the p <= 2 inequality applied to the images
  InequalityReport result;        // ak_via_duality
  bool consistent = false;        // every link of the chain holds within tolerance
};

DualityChain duality_chain(const OperatorTuple& Phi, double q,
                           const Tolerances& tol = default_tolerances());

/// End-to-end replay: witnesses, the pairing bound at those witnesses, cancellation, comparison with ak.
struct ProofReplay {
  WitnessSet witnesses;
  double S = 0.0;                  // ||B||_p^q + sum ||B_ij||_p^q
  double pairing = 0.0;            // |tr(YB + sum Y_ij B_ij)|
  double witness_mass = 0.0;       // ||Y||_q^p + sum ||Y_ij||_q^p
  double max_witness_defect = 0.0; // worst relative witness-identity defect
  InequalityReport bound;          // pairing_bound_check at the witnesses
  InequalityReport result;         // S <= n (sum ||A||_p^p)^{q/p} after cancellation
  InequalityReport direct;         // ak(T, p)
  bool witness_identities_ok = false;
  bool cancellation_ok = false;
  bool matches_ak = false;
};

ProofReplay ak_from_witness(const OperatorTuple& T, double p,
                            const Tolerances& tol = default_tolerances());

}  // namespace cmlab
