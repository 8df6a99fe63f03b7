// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "courtside/core.hpp"

namespace courtside {

/// Per-row inclusive column range [lo, hi] of a DTW search window.
struct WindowRow {
  int lo = 0;
  int hi = -1;
};
using DtwWindow = std::vector<WindowRow>;

struct DtwResult {
  double cost = 0.0;
  std::vector<std::pair<int, int>> path;  // (row, col) from (0,0) to (n-1, m-1)
};

/// Dynamic-programming alignment restricted to `window` (one row per element of `a`).
/// Steps (1,0), (0,1), (1,1); cell cost is the Euclidean distance.
DtwResult dtw_windowed(std::span<const Point2> a, std::span<const Point2> b, const DtwWindow& window);

/// Full-grid DTW cost. Throws std::invalid_argument on empty input.
double dtw_exact(std::span<const Point2> a, std::span<const Point2> b);
double dtw_exact(const Trajectory& a, const Trajectory& b);

/// Multi-resolution approximation: halve both series, solve recursively, project the coarse
/// path back up, widen it by `radius` cells and solve inside that window. Series no longer
/// than radius + 2 are solved exactly. The result is the cheapest such refinement over radii
/// 0..radius, so it is non-increasing in the radius. Never below dtw_exact; equal to it once
/// the radius reaches the longer length.
DtwResult fastdtw_path(std::span<const Point2> a, std::span<const Point2> b, int radius);
double fastdtw(std::span<const Point2> a, std::span<const Point2> b, int radius);
double fastdtw(const Trajectory& a, const Trajectory& b, int radius);

std::vector<Point2> positions(const Trajectory& t);

}  // namespace courtside
