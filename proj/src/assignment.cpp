// SPDX-License-Identifier: Apache-2.0
#include "courtside/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace courtside {

Assignment hungarian(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  Assignment out;
  out.row_to_col.assign(n, -1);
  if (n == 0) return out;

  constexpr double inf = std::numeric_limits<double>::infinity();
  // Potentials and matching use 1-based indices with column 0 as the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);

  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = cost(row0 - 1, c - 1) - u[row0] - v[c];
        if (reduced < minv[c]) {
          minv[c] = reduced;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  for (std::size_t c = 1; c <= n; ++c) out.row_to_col[match[c] - 1] = static_cast<int>(c - 1);
  for (std::size_t r = 0; r < n; ++r) out.cost += cost(r, static_cast<std::size_t>(out.row_to_col[r]));
  return out;
}

namespace {

double submatrix_optimum(const CostMatrix& cost, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) {
  CostMatrix sub(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = cost(rows[i], cols[j]);
  return hungarian(sub).cost;
}

}  // namespace

Assignment solve_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  const double optimum = hungarian(cost).cost;
  const double tol = 1e-9 * std::max(1.0, std::abs(optimum));

  Assignment out;
  out.row_to_col.assign(n, -1);
  std::vector<std::size_t> free_cols(n);
  for (std::size_t c = 0; c < n; ++c) free_cols[c] = c;
  double fixed = 0.0;

  // Greedily fix each row to the smallest column that still admits an optimal completion.
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> rest_rows;
    for (std::size_t rr = r + 1; rr < n; ++rr) rest_rows.push_back(rr);
    bool placed = false;
    for (std::size_t k = 0; k < free_cols.size() && !placed; ++k) {
      const std::size_t c = free_cols[k];
      std::vector<std::size_t> rest_cols = free_cols;
      rest_cols.erase(rest_cols.begin() + static_cast<long>(k));
      const double total = fixed + cost(r, c) + submatrix_optimum(cost, rest_rows, rest_cols);
      if (total <= optimum + tol) {
        out.row_to_col[r] = static_cast<int>(c);
        fixed += cost(r, c);
        free_cols = std::move(rest_cols);
        placed = true;
      }
    }
    if (!placed) return hungarian(cost);  // only reachable with NaN costs
  }
  out.cost = fixed;
  return out;
}

}  // namespace courtside
