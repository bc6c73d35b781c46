#include "cmlab/ensembles.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cmlab/errors.hpp"

namespace cmlab {

namespace {

constexpr std::array<std::pair<EnsembleKind, std::string_view>, 8> kKindNames{{
    {EnsembleKind::ginibre, "ginibre"},
    {EnsembleKind::hermitian, "hermitian"},
    {EnsembleKind::psd, "psd"},
    {EnsembleKind::low_rank, "low_rank"},
    {EnsembleKind::diagonal_real, "diagonal_real"},
    {EnsembleKind::equal_tuple, "equal_tuple"},
    {EnsembleKind::near_equal, "near_equal"},
    {EnsembleKind::nilpotent, "nilpotent"},
}};

// stream used for the shared base draw of equal_tuple / near_equal
constexpr std::uint64_t kBaseStream = 0xB45Eu;

}  // namespace

std::string_view to_string(EnsembleKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

EnsembleKind parse_ensemble_kind(std::string_view name) {
  for (const auto& [k, kind_name] : kKindNames)
    if (kind_name == name) return k;
  throw InputError("unknown ensemble kind: " + std::string(name));
}

void EnsembleSpec::validate() const {
  if (d < 1) throw InputError("ensemble: d must be >= 1");
  if (n < 1) throw InputError("ensemble: n must be >= 1");
  if (kind == EnsembleKind::low_rank && (rank < 1 || rank > d)) {
    throw InputError("ensemble: low_rank needs 1 <= rank <= d");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InputError("ensemble: epsilon must be finite and >= 0");
  }
}

std::uint64_t mix_seed(std::uint64_t value) {
  value += 0x9E3779B97F4A7C15ull;
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ull;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBull;
  return value ^ (value >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return mix_seed(mix_seed(parent) ^ (stream * 0xD1B54A32D192ED03ull + 1));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(Rng& rng, int rows, int cols) {
  ComplexMatrix G(rows, cols);
  // row-major draw order
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) G(i, j) = rng.complex_normal();
  return G;
}

ComplexMatrix haar_unitary(Rng& rng, int d) {
  const ComplexMatrix G = ginibre(rng, d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(R(k, k));
    if (mag > 0.0) Q.col(k) *= R(k, k) / mag;
  }
  return Q;
}

namespace {

ComplexMatrix draw_one(const EnsembleSpec& spec, Rng& rng) {
  const int d = spec.d;
  switch (spec.kind) {
    case EnsembleKind::ginibre:
    case EnsembleKind::equal_tuple:
    case EnsembleKind::near_equal:
      return ginibre(rng, d, d);
    case EnsembleKind::hermitian: {
      const ComplexMatrix G = ginibre(rng, d, d);
      return (G + G.adjoint()) * 0.5;
    }
    case EnsembleKind::psd: {
      const ComplexMatrix G = ginibre(rng, d, d);
      return G.adjoint() * G;
    }
    case EnsembleKind::low_rank: {
      const ComplexMatrix F = ginibre(rng, d, spec.rank);
      const ComplexMatrix H = ginibre(rng, spec.rank, d);
      return F * H;
    }
    case EnsembleKind::diagonal_real: {
      ComplexMatrix D = ComplexMatrix::Zero(d, d);
      for (int k = 0; k < d; ++k) D(k, k) = rng.normal();
      return D;
    }
    case EnsembleKind::nilpotent: {
      ComplexMatrix N = ComplexMatrix::Zero(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) N(i, j) = rng.complex_normal();
      return N;
    }
  }
  throw InputError("ensemble: unhandled kind");
}

}  // namespace

OperatorTuple generate(const EnsembleSpec& spec) {
  spec.validate();
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(spec.n));
  if (spec.kind == EnsembleKind::equal_tuple || spec.kind == EnsembleKind::near_equal) {
    Rng base_rng(derive_seed(spec.seed, kBaseStream));
    const ComplexMatrix base = ginibre(base_rng, spec.d, spec.d);
    for (int i = 0; i < spec.n; ++i) {
      if (spec.kind == EnsembleKind::equal_tuple) {
        out.push_back(base);
      } else {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
        out.push_back(base + spec.epsilon * ginibre(rng, spec.d, spec.d));
      }
    }
  } else {
    for (int i = 0; i < spec.n; ++i) {
      Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
      out.push_back(draw_one(spec, rng));
    }
  }
  return OperatorTuple(std::move(out));
}

}  // namespace cmlab
