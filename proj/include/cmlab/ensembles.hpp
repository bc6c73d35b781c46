#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "cmlab/matcore.hpp"
#include "cmlab/tuple.hpp"

namespace cmlab {

enum class EnsembleKind {
  ginibre,
  hermitian,
  psd,
  low_rank,
  diagonal_real,
  equal_tuple,
  near_equal,
  nilpotent,
};

std::string_view to_string(EnsembleKind kind);
/// Throws InputError on an unknown name.
EnsembleKind parse_ensemble_kind(std::string_view name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::ginibre;
  int n = 2;
  int d = 2;
  std::uint64_t seed = 0;
  int rank = 1;          // low_rank only
  double epsilon = 0.0;  // near_equal only

  /// Throws InputError unless d >= 1, n >= 1, 1 <= rank <= d, epsilon >= 0.
  void validate() const;
};

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t value);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

/// Portable generator: mt19937_64 for bits, 53-bit uniforms, Box-Muller normals.
/// Unlike std::normal_distribution the draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  double uniform();  // [0, 1)
  double normal();
  /// Standard complex Gaussian: E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

ComplexMatrix ginibre(Rng& rng, int rows, int cols);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase-corrected R).
ComplexMatrix haar_unitary(Rng& rng, int d);

/// Deterministic in spec; matrix i of the tuple draws from stream derive_seed(seed, i).
OperatorTuple generate(const EnsembleSpec& spec);

}  // namespace cmlab
