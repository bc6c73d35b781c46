#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cmlab/matcore.hpp"

namespace cmlab {

/// Ordered n-tuple of square d x d complex matrices, n >= 1.
class OperatorTuple {
 public:
  OperatorTuple() = default;
  explicit OperatorTuple(std::vector<ComplexMatrix> matrices);

  std::size_t size() const { return matrices_.size(); }
  int n() const { return static_cast<int>(matrices_.size()); }
  int dim() const { return matrices_.empty() ? 0 : static_cast<int>(matrices_.front().rows()); }
  const ComplexMatrix& operator[](std::size_t i) const { return matrices_[i]; }
  const std::vector<ComplexMatrix>& matrices() const { return matrices_; }

  auto begin() const { return matrices_.begin(); }
  auto end() const { return matrices_.end(); }

  ComplexMatrix sum() const;
  /// A_i - A_j for i < j, in lexicographic (i, j) order.
  std::vector<ComplexMatrix> pairwise_differences() const;

 private:
  std::vector<ComplexMatrix> matrices_;
};

/// Number of unordered pairs i < j.
inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Index pairs (i, j), i < j, in the order used by pairwise_differences().
std::vector<std::pair<int, int>> index_pairs(int n);

}  // namespace cmlab
