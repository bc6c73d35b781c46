#include "cmlab/proofs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cmlab/errors.hpp"
#include "cmlab/schatten.hpp"

namespace cmlab {

namespace {

void require_interpolation_range(double p, const char* who) {
  if (std::isnan(p) || !(p > 1.0) || p > 2.0) {
    throw DomainError(std::string(who) + ": requires 1 < p <= 2");
  }
}

double rel_defect(double a, double b) {
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

bool close_rel(double a, double b, double rtol) {
  return std::abs(a - b) <= rtol * std::max({1.0, std::abs(a), std::abs(b)});
}

// a <= b up to relative slack
bool leq_rel(double a, double b, double rtol) {
  return a <= b + rtol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

StripPoint::StripPoint(double x_, double y_) : x(x_), y(y_) {
  if (!(x_ >= 0.5 && x_ <= 1.0) || !std::isfinite(y_)) {
    throw DomainError("StripPoint: x must lie in [1/2, 1], got " + std::to_string(x_));
  }
}

ComplexMatrix dual_witness(const ComplexMatrix& B, double p, const Tolerances& tol) {
  require_interpolation_range(p, "dual_witness");
  const double q = dual_exponent(p);
  const SvdResult f = svd(B);
  const Eigen::Index d = B.rows();
  const double zero = tol.zero_rel * f.spectrum.max();
  if (f.spectrum.max() == 0.0) return ComplexMatrix::Zero(d, d);
  const double norm = spectrum_norm(f.spectrum, p, tol);
  const double scale = std::pow(norm, q - p);
  if (!std::isfinite(scale * std::pow(f.spectrum.max(), p - 1.0))) {
    throw DomainError("dual_witness: ||B||_p^q is not representable in double precision");
  }
  // |B|^{p-1} U^* = R diag(s^{p-1}) R^dag R L^dag = R diag(s^{p-1}) L^dag
  Eigen::VectorXcd powered(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double s = f.spectrum.values(k);
    powered(k) = s <= zero ? 0.0 : scale * std::pow(s, p - 1.0);
  }
  return f.right * powered.asDiagonal() * f.left.adjoint();
}

WitnessSet witness_set(const OperatorTuple& T, double p, const Tolerances& tol) {
  WitnessSet W;
  W.Y = dual_witness(T.sum(), p, tol);
  for (const auto& diff : T.pairwise_differences()) W.pairs.push_back(dual_witness(diff, p, tol));
  return W;
}

AnalyticFamily::Factored AnalyticFamily::factor(const ComplexMatrix& X, const Tolerances& tol) {
  const SvdResult f = svd(X);
  Factored out{f.left, f.spectrum.values, f.right, tol.zero_rel * f.spectrum.max(), 0.0};
  return out;
}

AnalyticFamily::AnalyticFamily(const OperatorTuple& T, const WitnessSet& W, double p,
                               const Tolerances& tol)
    : p_(p), q_(0.0) {
  require_interpolation_range(p, "AnalyticFamily");
  q_ = dual_exponent(p);
  if (W.pairs.size() != pair_count(T.size())) {
    throw InputError("AnalyticFamily: witness pair count does not match the tuple");
  }
  for (const auto& A : T) {
    a_.push_back(factor(A, tol));
    a_mass_ += power_sum(SingularSpectrum{a_.back().s}, p_, tol);
  }
  auto witness = [&](const ComplexMatrix& Y) {
    if (Y.rows() != T.dim()) throw InputError("AnalyticFamily: witness dimension mismatch");
    Factored f = factor(Y, tol);
    f.q_norm = spectrum_norm(SingularSpectrum{f.s}, q_, tol);
    y_mass_ += std::pow(f.q_norm, p_);
    return f;
  };
  y_ = witness(W.Y);
  for (const auto& Yij : W.pairs) y_pairs_.push_back(witness(Yij));

  // frequencies: p ln s for A-factors, (p+q) ln ||Y||_q - q ln s for witnesses
  auto range = [](const Factored& f, double scale, double shift, double& lo, double& hi) {
    for (Eigen::Index k = 0; k < f.s.size(); ++k) {
      if (f.s(k) <= f.zero) continue;
      const double w = shift + scale * std::log(f.s(k));
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  };
  double a_lo = 0.0, a_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  bool first_a = true;
  for (const auto& a : a_) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    range(a, p_, 0.0, lo, hi);
    if (lo > hi) continue;
    a_lo = first_a ? lo : std::min(a_lo, lo);
    a_hi = first_a ? hi : std::max(a_hi, hi);
    first_a = false;
  }
  bool first_y = true;
  auto add_witness = [&](const Factored& y) {
    if (y.q_norm == 0.0) return;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    range(y, -q_, (p_ + q_) * std::log(y.q_norm), lo, hi);
    y_lo = first_y ? lo : std::min(y_lo, lo);
    y_hi = first_y ? hi : std::max(y_hi, hi);
    first_y = false;
  };
  add_witness(y_);
  for (const auto& y : y_pairs_) add_witness(y);
  spread_ = (a_hi - a_lo) + (y_hi - y_lo);

  for (const auto& a : a_) expand(y_, a, 1.0);
  const auto pairs = index_pairs(n());
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    expand(y_pairs_[m], a_[static_cast<std::size_t>(pairs[m].first)], 1.0);
    expand(y_pairs_[m], a_[static_cast<std::size_t>(pairs[m].second)], -1.0);
  }
}

// tr(Y(z) A(z)) = sum_{l,j} exp(phi_l(z) + pz ln a_j) (R_Y^dag L_A)_{lj} (R_A^dag L_Y)_{jl},
// phi_l(z) = pz ln N + q(1-z) ln(s_l/N).
void AnalyticFamily::expand(const Factored& y, const Factored& a, double sign) {
  if (y.q_norm == 0.0) return;
  const ComplexMatrix left = y.right.adjoint() * a.left;
  const ComplexMatrix right = a.right.adjoint() * y.left;
  const double log_norm = std::log(y.q_norm);
  for (Eigen::Index l = 0; l < y.s.size(); ++l) {
    if (y.s(l) <= y.zero) continue;
    const double rel = std::log(y.s(l)) - log_norm;
    for (Eigen::Index j = 0; j < a.s.size(); ++j) {
      if (a.s(j) <= a.zero) continue;
      const Complex c = sign * left(l, j) * right(j, l);
      if (c == Complex(0.0)) continue;
      terms_.push_back(Term{c, q_ * rel, p_ * log_norm - q_ * rel + p_ * std::log(a.s(j))});
    }
  }
}

Complex AnalyticFamily::exponential_sum(StripPoint point) const {
  const Complex z = point.z();
  Complex f = 0.0;
  for (const auto& t : terms_) f += t.coefficient * std::exp(t.offset + t.lambda * z);
  return f;
}

// |A|^{pz} W = L diag(s^{pz}) R^dag for the right polar decomposition A = (L S L^dag)(L R^dag).
ComplexMatrix AnalyticFamily::a_at(const Factored& a, Complex z) const {
  const Eigen::Index d = a.s.size();
  Eigen::VectorXcd powered(d);
  const Complex t = p_ * z;
  for (Eigen::Index k = 0; k < d; ++k) {
    powered(k) = a.s(k) <= a.zero ? Complex(0.0) : std::exp(t * std::log(a.s(k)));
  }
  return a.left * powered.asDiagonal() * a.right.adjoint();
}

// ||Y||_q^{pz - q(1-z)} V |Y|^{q(1-z)} = c(z) L diag(s^{q(1-z)}) R^dag for Y = (L R^dag)(R S R^dag).
ComplexMatrix AnalyticFamily::y_at(const Factored& y, Complex z) const {
  const Eigen::Index d = y.s.size();
  if (y.q_norm == 0.0) return ComplexMatrix::Zero(d, d);
  // N^{pz - q(1-z)} s^{q(1-z)} = exp(pz ln N + q(1-z) ln(s/N)); s <= N keeps this bounded
  // for p near 1, where the two factors separately over- and underflow.
  const double log_norm = std::log(y.q_norm);
  const Complex outer = p_ * z * log_norm;
  const Complex inner = q_ * (1.0 - z);
  Eigen::VectorXcd powered(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    // kernel maps to 0 even when Re(inner) = 0 (x = 1)
    powered(k) = y.s(k) <= y.zero ? Complex(0.0)
                                  : std::exp(outer + inner * (std::log(y.s(k)) - log_norm));
  }
  return y.left * powered.asDiagonal() * y.right.adjoint();
}

Complex AnalyticFamily::operator()(StripPoint point) const {
  const Complex z = point.z();
  std::vector<ComplexMatrix> az;
  az.reserve(a_.size());
  for (const auto& a : a_) az.push_back(a_at(a, z));
  ComplexMatrix bz = ComplexMatrix::Zero(az.front().rows(), az.front().cols());
  for (const auto& m : az) bz += m;
  Complex f = trace_pairing(y_at(y_, z), bz);
  const auto pairs = index_pairs(n());
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    if (y_pairs_[m].q_norm == 0.0) continue;
    const auto [i, j] = pairs[m];
    f += trace_pairing(y_at(y_pairs_[m], z), az[i] - az[j]);
  }
  return f;
}

Complex analytic_family_eval(const OperatorTuple& T, const WitnessSet& W, double p, StripPoint z,
                             const Tolerances& tol) {
  return AnalyticFamily(T, W, p, tol)(z);
}

namespace {

double m1_of(const AnalyticFamily& fam) { return fam.y_mass() * fam.a_mass(); }
double m2_of(const AnalyticFamily& fam) {
  return std::sqrt(static_cast<double>(fam.n()) * fam.y_mass() * fam.a_mass());
}

// M1^{2x-1} M2^{2-2x}: the three-lines interpolant between x = 1/2 and x = 1
double interpolated_bound(double M1, double M2, double x) {
  return std::pow(M1, 2.0 * x - 1.0) * std::pow(M2, 2.0 - 2.0 * x);
}

}  // namespace

double boundary_bound(const OperatorTuple& T, const WitnessSet& W, double p, double x,
                      const Tolerances& tol) {
  if (x != 1.0 && x != 0.5) throw DomainError("boundary_bound: x must be 1/2 or 1");
  const AnalyticFamily fam(T, W, p, tol);
  return x == 1.0 ? m1_of(fam) : m2_of(fam);
}

double three_lines_bound(double M1, double M2, double p) {
  if (std::isnan(M1) || std::isnan(M2) || M1 < 0.0 || M2 < 0.0) {
    throw DomainError("three_lines_bound: bounds must be non-negative");
  }
  require_interpolation_range(p, "three_lines_bound");
  return std::pow(M1, 2.0 * (1.0 / p - 0.5)) * std::pow(M2, 2.0 * (1.0 - 1.0 / p));
}

InequalityReport pairing_bound_check(const OperatorTuple& T, const ComplexMatrix& Y,
                               std::span<const ComplexMatrix> Y_pairs, double p,
                               const Tolerances& tol) {
  require_interpolation_range(p, "pairing_bound_check");
  if (Y_pairs.size() != pair_count(T.size())) {
    throw InputError("pairing_bound_check: expected n(n-1)/2 pair witnesses");
  }
  const double q = dual_exponent(p);
  const SchattenExponent eq(q);
  Complex pairing = trace_pairing(Y, T.sum());
  double y_mass = std::pow(schatten_norm(Y, eq, tol).value, p);
  const auto diffs = T.pairwise_differences();
  for (std::size_t m = 0; m < diffs.size(); ++m) {
    pairing += trace_pairing(Y_pairs[m], diffs[m]);
    y_mass += std::pow(schatten_norm(Y_pairs[m], eq, tol).value, p);
  }
  double a_mass = 0.0;
  for (const auto& A : T) a_mass += schatten_power_sum(A, p, tol);
  const double rhs = std::pow(static_cast<double>(T.n()), 1.0 / q) * std::pow(a_mass, 1.0 / p) *
                     std::pow(y_mass, 1.0 / p);
  return make_report("pairing_bound", std::abs(pairing), rhs, p, T.n(), T.dim(), tol.margin);
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw InputError("linspace: count must be positive");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  }
  out.back() = hi;
  return out;
}

namespace {

// Grid maximum of |f(x + iy)|, polished by golden-section search inside the
// bracket of every grid-local maximum. Oscillation in y grows with q, and a
// coarse grid alone undershoots the peaks badly for p close to 1.
double refined_sup(const AnalyticFamily& fam, double x, std::span<const double> grid,
                   const std::vector<double>& grid_row) {
  double sup = 0.0;
  for (double v : grid_row) sup = std::max(sup, v);
  if (grid.size() < 2) return sup;
  auto absf = [&](double y) { return std::abs(fam.exponential_sum(StripPoint(x, y))); };

  // resample each grid interval finely enough to resolve the fastest oscillation
  constexpr double kMaxSamples = 4000.0;
  const double span_y = std::abs(grid.back() - grid.front());
  const double step = std::max(std::numbers::pi / (8.0 * std::max(fam.frequency_spread(), 1e-3)),
                               span_y / kMaxSamples);
  std::vector<double> ys;
  std::vector<double> row;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double width = grid[k + 1] - grid[k];
    const int pieces = std::clamp(static_cast<int>(std::ceil(std::abs(width) / step)), 1, 4096);
    for (int j = 0; j < pieces; ++j) {
      ys.push_back(grid[k] + width * j / pieces);
      row.push_back(j == 0 ? grid_row[k] : absf(ys.back()));
    }
  }
  ys.push_back(grid.back());
  row.push_back(grid_row.back());
  for (double v : row) sup = std::max(sup, v);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t k = 1; k + 1 < ys.size(); ++k) {
    if (row[k] < row[k - 1] || row[k] < row[k + 1]) continue;
    double lo = ys[k - 1], hi = ys[k + 1];
    double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
    double fa = absf(a), fb = absf(b);
    for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
      if (fa < fb) {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = absf(b);
      } else {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = absf(a);
      }
    }
    sup = std::max({sup, fa, fb});
  }
  return sup;
}

}  // namespace

ConvexityScan convexity_scan(const OperatorTuple& T, const WitnessSet& W, double p,
                             std::span<const double> x_grid, std::span<const double> y_grid,
                             const Tolerances& tol) {
  if (x_grid.empty() || y_grid.empty()) throw InputError("convexity_scan: empty grid");
  const AnalyticFamily fam(T, W, p, tol);
  ConvexityScan scan;
  scan.M1 = m1_of(fam);
  scan.M2 = m2_of(fam);
  scan.worst_midpoint_excess = -std::numeric_limits<double>::infinity();
  scan.worst_bound_excess = -std::numeric_limits<double>::infinity();
  scan.x_grid.assign(x_grid.begin(), x_grid.end());
  scan.samples.reserve(x_grid.size() * y_grid.size());
  for (double x : x_grid) {
    const double bound = interpolated_bound(scan.M1, scan.M2, x);
    std::vector<double> row;
    row.reserve(y_grid.size());
    for (double y : y_grid) {
      const StripPoint z(x, y);
      const Complex f = fam(z);
      scan.samples.push_back({z, f, bound});
      row.push_back(std::abs(f));
      scan.worst_bound_excess = std::max(scan.worst_bound_excess, row.back() - bound);
    }
    const double sup = refined_sup(fam, x, y_grid, row);
    scan.worst_bound_excess = std::max(scan.worst_bound_excess, sup - bound);
    scan.sup_abs.push_back(sup);
  }
  const double bound_slack = tol.atol + tol.rtol * std::max(scan.M1, scan.M2);
  scan.bounded = scan.worst_bound_excess <= bound_slack;

  for (std::size_t k = 1; k + 1 < scan.x_grid.size(); ++k) {
    const double xa = scan.x_grid[k - 1], xm = scan.x_grid[k], xb = scan.x_grid[k + 1];
    const double ma = scan.sup_abs[k - 1], mm = scan.sup_abs[k], mb = scan.sup_abs[k + 1];
    if (mm == 0.0) continue;
    if (ma == 0.0 || mb == 0.0) {
      scan.worst_midpoint_excess = std::numeric_limits<double>::infinity();
      continue;
    }
    const double t = (xb - xm) / (xb - xa);
    const double chord = t * std::log(ma) + (1.0 - t) * std::log(mb);
    scan.worst_midpoint_excess = std::max(scan.worst_midpoint_excess, std::log(mm) - chord);
  }
  scan.convex = scan.worst_midpoint_excess <= tol.scan;
  return scan;
}

ComplexMatrix norming_functional(const ComplexMatrix& phi, double q, const Tolerances& tol) {
  if (std::isnan(q) || !(q > 1.0) || !std::isfinite(q)) {
    throw DomainError("norming_functional: requires finite q > 1");
  }
  const SvdResult f = svd(phi);
  if (f.spectrum.max() == 0.0) throw DomainError("norming_functional: phi is zero");
  const double norm = spectrum_norm(f.spectrum, q, tol);
  const double zero = tol.zero_rel * f.spectrum.max();
  const Eigen::Index d = phi.rows();
  // |phi|^{q-1} V^dag = R diag(s^{q-1}) L^dag for phi = (L R^dag)(R S R^dag)
  Eigen::VectorXcd powered(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double s = f.spectrum.values(k);
    powered(k) = s <= zero ? 0.0 : std::pow(s / norm, q - 1.0);
  }
  return f.right * powered.asDiagonal() * f.left.adjoint();
}

namespace {

void require_dual_side(double q, const char* who) {
  if (std::isnan(q) || q < 2.0 || !std::isfinite(q)) {
    throw DomainError(std::string(who) + ": requires finite q >= 2");
  }
}

}  // namespace

OperatorTuple duality_images(const OperatorTuple& Phi, double q, const Tolerances& tol) {
  require_dual_side(q, "duality_images");
  const double p = dual_exponent(q);
  std::vector<double> norms;
  double mass = 0.0;
  for (const auto& phi : Phi) {
    norms.push_back(schatten_norm(phi, SchattenExponent(q), tol).value);
    mass += std::pow(norms.back(), q);
  }
  if (mass == 0.0) throw InputError("duality_images: all phi_i are zero");
  const double scale = std::pow(mass, -1.0 / p);
  std::vector<ComplexMatrix> images;
  for (std::size_t i = 0; i < Phi.size(); ++i) {
    if (norms[i] == 0.0) {
      images.push_back(ComplexMatrix::Zero(Phi.dim(), Phi.dim()));
    } else {
      images.push_back(scale * std::pow(norms[i], q - 1.0) * norming_functional(Phi[i], q, tol));
    }
  }
  return OperatorTuple(std::move(images));
}

InequalityReport ak_via_duality(const OperatorTuple& Phi, double q, const Tolerances& tol) {
  require_dual_side(q, "ak_via_duality");
  if (Phi.size() < 2) throw InputError("ak_via_duality: needs n >= 2 matrices");
  const double p = dual_exponent(q);
  const SchattenExponent eq(q);
  double mass = 0.0;
  for (const auto& phi : Phi) mass += schatten_power_sum(phi, q, tol);
  const double scaled = Phi.n() * std::pow(mass, p / q);
  double summed = std::pow(schatten_norm(Phi.sum(), eq, tol).value, p);
  for (const auto& diff : Phi.pairwise_differences()) {
    summed += std::pow(schatten_norm(diff, eq, tol).value, p);
  }
  return make_report("ak_via_duality", scaled, summed, q, Phi.n(), Phi.dim(), tol.margin);
}

DualityChain duality_chain(const OperatorTuple& Phi, double q, const Tolerances& tol) {
  require_dual_side(q, "duality_chain");
  const double p = dual_exponent(q);
  const SchattenExponent ep(p), eq(q);
  const double n = Phi.n();
  DualityChain c;
  c.images = duality_images(Phi, q, tol);

  double mass_q = 0.0;
  for (const auto& phi : Phi) mass_q += schatten_power_sum(phi, q, tol);
  c.target = std::pow(mass_q, 1.0 / q);
  for (const auto& x : c.images) c.image_mass += schatten_power_sum(x, p, tol);

  Complex paired = 0.0;
  for (std::size_t i = 0; i < Phi.size(); ++i) paired += trace_pairing(c.images[i], Phi[i]);
  c.paired = paired.real();

  const ComplexMatrix x_sum = c.images.sum();
  const ComplexMatrix phi_sum = Phi.sum();
  const auto x_diffs = c.images.pairwise_differences();
  const auto phi_diffs = Phi.pairwise_differences();
  Complex polarized = trace_pairing(x_sum, phi_sum);
  double triangle = schatten_norm(x_sum, ep, tol).value * schatten_norm(phi_sum, eq, tol).value;
  double x_side = std::pow(schatten_norm(x_sum, ep, tol).value, q);
  double phi_side = std::pow(schatten_norm(phi_sum, eq, tol).value, p);
  for (std::size_t m = 0; m < x_diffs.size(); ++m) {
    polarized += trace_pairing(x_diffs[m], phi_diffs[m]);
    const double xn = schatten_norm(x_diffs[m], ep, tol).value;
    const double pn = schatten_norm(phi_diffs[m], eq, tol).value;
    triangle += xn * pn;
    x_side += std::pow(xn, q);
    phi_side += std::pow(pn, p);
  }
  c.polarized = polarized.real() / n;
  c.triangle_bound = triangle / n;
  c.holder_bound = std::pow(x_side, 1.0 / q) * std::pow(phi_side, 1.0 / p) / n;
  c.final_bound = std::pow(phi_side, 1.0 / p) / std::pow(n, 1.0 / p);
  c.images_ak = ak(c.images, p, tol);
  c.result = ak_via_duality(Phi, q, tol);

  const double r = tol.rtol;
  c.consistent = close_rel(c.image_mass, 1.0, r) && close_rel(c.paired, c.target, r) &&
                 close_rel(c.polarized, c.paired, r) && leq_rel(c.polarized, c.triangle_bound, r) &&
                 leq_rel(c.triangle_bound, c.holder_bound, r) &&
                 leq_rel(c.holder_bound, c.final_bound, r) && leq_rel(c.target, c.final_bound, r) &&
                 c.images_ak.satisfied;
  return c;
}

ProofReplay ak_from_witness(const OperatorTuple& T, double p, const Tolerances& tol) {
  require_interpolation_range(p, "ak_from_witness");
  if (T.size() < 2) throw InputError("ak_from_witness: needs n >= 2 matrices");
  const double q = dual_exponent(p);
  const SchattenExponent ep(p), eq(q);
  const double n = T.n();
  ProofReplay r;
  r.witnesses = witness_set(T, p, tol);

  std::vector<ComplexMatrix> blocks{T.sum()};
  for (auto& diff : T.pairwise_differences()) blocks.push_back(std::move(diff));
  std::vector<const ComplexMatrix*> witnesses{&r.witnesses.Y};
  for (const auto& Yij : r.witnesses.pairs) witnesses.push_back(&Yij);

  Complex pairing = 0.0;
  r.witness_identities_ok = true;
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    const double bq = std::pow(schatten_norm(blocks[m], ep, tol).value, q);
    const double yp = std::pow(schatten_norm(*witnesses[m], eq, tol).value, p);
    const Complex tyb = trace_pairing(*witnesses[m], blocks[m]);
    r.S += bq;
    r.witness_mass += yp;
    pairing += tyb;
    if (bq > 0.0) {
      const double defect = std::max(std::abs(tyb - Complex(bq)), std::abs(yp - bq)) / bq;
      r.max_witness_defect = std::max(r.max_witness_defect, defect);
    } else if (yp != 0.0 || std::abs(tyb) != 0.0) {
      r.max_witness_defect = std::numeric_limits<double>::infinity();
    }
  }
  r.witness_identities_ok = r.max_witness_defect <= tol.rtol;
  r.pairing = std::abs(pairing);
  r.bound = pairing_bound_check(T, r.witnesses.Y, r.witnesses.pairs, p, tol);

  double a_mass = 0.0;
  for (const auto& A : T) a_mass += schatten_power_sum(A, p, tol);
  const double cancelled_rhs = n * std::pow(a_mass, q / p);
  r.result = make_report("ak_from_witness", r.S, cancelled_rhs, p, T.n(), T.dim(), tol.margin);
  if (r.S == 0.0) {
    // nothing to cancel; 0 <= rhs
    r.cancellation_ok = true;
  } else {
    // S <= c S^{1/p}  <=>  S^{1/q} <= c  <=>  S <= c^q; c^q must reproduce n (sum ||A||^p)^{q/p}
    const double c = r.bound.rhs / std::pow(r.S, 1.0 / p);
    r.cancellation_ok = close_rel(std::pow(c, q), cancelled_rhs, tol.rtol) &&
                        close_rel(r.bound.lhs, r.S, tol.rtol) &&
                        close_rel(r.witness_mass, r.S, tol.rtol);
  }
  r.direct = ak(T, p, tol);
  r.matches_ak = rel_defect(r.result.lhs, r.direct.lhs) <= tol.rtol &&
                 rel_defect(r.result.rhs, r.direct.rhs) <= tol.rtol;
  return r;
}

}  // namespace cmlab
