#include "cmlab/tuple.hpp"

#include "cmlab/errors.hpp"

namespace cmlab {

OperatorTuple::OperatorTuple(std::vector<ComplexMatrix> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InputError("OperatorTuple: need at least one matrix");
  const Eigen::Index d = matrices_.front().rows();
  for (const auto& m : matrices_) {
    require_square_finite(m, "OperatorTuple");
    if (m.rows() != d) throw InputError("OperatorTuple: matrices must share one dimension");
  }
}

ComplexMatrix OperatorTuple::sum() const {
  ComplexMatrix s = ComplexMatrix::Zero(dim(), dim());
  for (const auto& m : matrices_) s += m;
  return s;
}

std::vector<ComplexMatrix> OperatorTuple::pairwise_differences() const {
  std::vector<ComplexMatrix> out;
  out.reserve(pair_count(size()));
  for (const auto& [i, j] : index_pairs(n())) out.emplace_back(matrices_[i] - matrices_[j]);
  return out;
}

std::vector<std::pair<int, int>> index_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace cmlab
