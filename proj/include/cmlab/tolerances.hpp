#pragma once

namespace cmlab {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  double atol = 1e-10;
  double rtol = 1e-8;
  // singular/eigen values below zero_rel * s_max are treated as exact zeros
  double zero_rel = 1e-12;
  double margin = 1e-9;
  double scan = 1e-6;
  double feasibility = 1e-7;
  // Hermitian / PSD / unitary membership checks
  double structure = 1e-9;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace cmlab
