// SPDX-License-Identifier: Apache-2.0
#include "courtside/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace courtside {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_non_empty(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("DTW of an empty trajectory");
}

double cell_cost(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

DtwWindow full_window(std::size_t n, std::size_t m) {
  return DtwWindow(n, WindowRow{0, static_cast<int>(m) - 1});
}

std::vector<Point2> halve(std::span<const Point2> s) {
  std::vector<Point2> out;
  out.reserve(s.size() / 2);
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) out.push_back((s[i] + s[i + 1]) * 0.5);
  return out;
}

/// Projects a coarse path onto the finer grid, widened by `radius` coarse cells, and
/// repairs the rows so that a monotone path from corner to corner always exists.
DtwWindow expand_window(const std::vector<std::pair<int, int>>& coarse_path, int n, int m, int radius) {
  const int coarse_rows = (n + 1) / 2;
  std::vector<int> clo(static_cast<std::size_t>(coarse_rows), std::numeric_limits<int>::max());
  std::vector<int> chi(static_cast<std::size_t>(coarse_rows), std::numeric_limits<int>::min());
  for (auto [i, j] : coarse_path) {
    for (int ci = std::max(0, i - radius); ci <= std::min(coarse_rows - 1, i + radius); ++ci) {
      clo[ci] = std::min(clo[ci], j - radius);
      chi[ci] = std::max(chi[ci], j + radius);
    }
  }

  DtwWindow w(static_cast<std::size_t>(n));
  for (int row = 0; row < n; ++row) {
    const int ci = row / 2;
    if (clo[ci] > chi[ci]) {
      w[row] = WindowRow{0, -1};
      continue;
    }
    w[row] = WindowRow{std::max(0, 2 * clo[ci]), std::min(m - 1, 2 * chi[ci] + 1)};
  }

  w[0].lo = 0;
  if (w[0].hi < 0) w[0].hi = 0;
  // A step from row-1 enters this row at the same or the next column.
  for (int row = 1; row < n; ++row) {
    WindowRow& cur = w[row];
    const WindowRow& prev = w[row - 1];
    if (cur.hi < cur.lo) cur = prev;
    cur.lo = std::min(cur.lo, std::min(prev.hi + 1, m - 1));
    cur.hi = std::max(cur.hi, prev.lo);
  }
  w[n - 1].hi = m - 1;
  return w;
}

}  // namespace

std::vector<Point2> positions(const Trajectory& t) {
  std::vector<Point2> out;
  out.reserve(t.samples.size());
  for (const auto& s : t.samples) out.push_back(s.pos);
  return out;
}

DtwResult dtw_windowed(std::span<const Point2> a, std::span<const Point2> b, const DtwWindow& window) {
  require_non_empty(a, b);
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  if (static_cast<int>(window.size()) != n) throw std::invalid_argument("window has wrong row count");

  // Row-compressed accumulated cost: row i stores columns window[i].lo .. window[i].hi.
  std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + static_cast<std::size_t>(std::max(0, window[i].hi - window[i].lo + 1));
  std::vector<double> acc(offset[n], kInf);

  auto at = [&](int i, int j) -> double {
    if (i < 0 || j < 0) return kInf;
    const WindowRow& r = window[i];
    if (j < r.lo || j > r.hi) return kInf;
    return acc[offset[i] + static_cast<std::size_t>(j - r.lo)];
  };

  for (int i = 0; i < n; ++i) {
    const WindowRow& r = window[i];
    double* row = acc.data() + offset[i];
    const WindowRow* up = i > 0 ? &window[i - 1] : nullptr;
    const double* prev = i > 0 ? acc.data() + offset[i - 1] : nullptr;
    for (int j = r.lo; j <= r.hi; ++j) {
      double best = kInf;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        if (j > r.lo) best = row[j - 1 - r.lo];
        if (up != nullptr) {
          if (j >= up->lo && j <= up->hi) best = std::min(best, prev[j - up->lo]);
          if (j - 1 >= up->lo && j - 1 <= up->hi) best = std::min(best, prev[j - 1 - up->lo]);
        }
      }
      row[j - r.lo] = cell_cost(a[i], b[j]) + best;
    }
  }

  DtwResult out;
  out.cost = at(n - 1, m - 1);
  if (!(out.cost < kInf)) throw std::logic_error("DTW window does not connect the corners");

  int i = n - 1;
  int j = m - 1;
  out.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    const double diag = at(i - 1, j - 1);
    const double up = at(i - 1, j);
    const double left = at(i, j - 1);
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
    out.path.emplace_back(i, j);
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

double dtw_exact(std::span<const Point2> a, std::span<const Point2> b) {
  require_non_empty(a, b);
  return dtw_windowed(a, b, full_window(a.size(), b.size())).cost;
}

double dtw_exact(const Trajectory& a, const Trajectory& b) {
  const auto pa = positions(a);
  const auto pb = positions(b);
  return dtw_exact(pa, pb);
}

namespace {

bool covers_grid(const DtwWindow& w, int m) {
  return std::all_of(w.begin(), w.end(), [m](const WindowRow& r) { return r.lo == 0 && r.hi == m - 1; });
}

/// One coarsen-project-refine pass. `exact` is set when every level searched the full grid.
DtwResult salvador_chan(std::span<const Point2> a, std::span<const Point2> b, int radius, bool& exact) {
  const auto min_size = static_cast<std::size_t>(radius) + 2;
  if (a.size() <= min_size || b.size() <= min_size) {
    exact = true;
    return dtw_windowed(a, b, full_window(a.size(), b.size()));
  }

  const auto ca = halve(a);
  const auto cb = halve(b);
  const DtwResult coarse = salvador_chan(ca, cb, radius, exact);
  const DtwWindow window =
      expand_window(coarse.path, static_cast<int>(a.size()), static_cast<int>(b.size()), radius);
  if (!covers_grid(window, static_cast<int>(b.size()))) exact = false;
  return dtw_windowed(a, b, window);
}

}  // namespace

DtwResult fastdtw_path(std::span<const Point2> a, std::span<const Point2> b, int radius) {
  require_non_empty(a, b);
  if (radius < 0) throw std::invalid_argument("FastDTW radius must be non-negative");
  const auto min_size = static_cast<std::size_t>(radius) + 2;
  if (a.size() <= min_size || b.size() <= min_size) return dtw_windowed(a, b, full_window(a.size(), b.size()));
  bool exact = false;
  DtwResult best = salvador_chan(a, b, radius, exact);
  for (int r = radius - 1; r >= 0 && !exact; --r) {
    DtwResult candidate = salvador_chan(a, b, r, exact);
    if (candidate.cost < best.cost) best = std::move(candidate);
  }
  return best;
}

double fastdtw(std::span<const Point2> a, std::span<const Point2> b, int radius) {
  return fastdtw_path(a, b, radius).cost;
}

double fastdtw(const Trajectory& a, const Trajectory& b, int radius) {
  const auto pa = positions(a);
  const auto pb = positions(b);
  return fastdtw(pa, pb, radius);
}

}  // namespace courtside
