// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace courtside {

/// Dense square cost matrix, row-major.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  /// row_to_col[r] is the column matched to row r.
  std::vector<int> row_to_col;
  double cost = 0.0;
};

/// Minimum total cost perfect matching (Kuhn-Munkres, O(n^3)).
Assignment hungarian(const CostMatrix& cost);

/// Minimum total cost perfect matching; among matchings whose cost is within a relative
/// 1e-9 of the optimum, returns the lexicographically smallest row_to_col vector.
Assignment solve_assignment(const CostMatrix& cost);

}  // namespace courtside
