#include "wfkit/raster.hpp"

#include <algorithm>
#include <cmath>

namespace wfkit {

namespace {

// Parameter sub-range of a + t*d, t in [0,1], whose coordinate stays inside
// [lo, hi]. Returns false when empty.
bool clip_axis(double a, double d, double lo, double hi, double& t0, double& t1) {
  if (d == 0.0) return a >= lo && a <= hi;
  double ta = (lo - a) / d;
  double tb = (hi - a) / d;
  if (ta > tb) std::swap(ta, tb);
  t0 = std::max(t0, ta);
  t1 = std::min(t1, tb);
  return t0 <= t1;
}

Cell cell_of(Point2 p) {
  return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
}

}  // namespace

std::vector<Cell> supercover(Point2 a, Point2 b, std::size_t cols, std::size_t rows) {
  std::vector<Cell> cells;
  if (!is_finite(a) || !is_finite(b)) return cells;
  const Point2 d = b - a;
  const auto w = static_cast<double>(cols);
  const auto h = static_cast<double>(rows);

  // Restrict to a one-cell margin around the raster so the walk stays bounded.
  double t_lo = 0.0;
  double t_hi = 1.0;
  if (!clip_axis(a.x, d.x, -1.0, w + 1.0, t_lo, t_hi) ||
      !clip_axis(a.y, d.y, -1.0, h + 1.0, t_lo, t_hi)) {
    return cells;
  }
  auto at = [&](double t) { return Point2{a.x + t * d.x, a.y + t * d.y}; };
  const Point2 s = t_lo == 0.0 ? a : at(t_lo);
  const Point2 e = t_hi == 1.0 ? b : at(t_hi);

  std::vector<double> events{t_lo, t_hi};
  std::vector<Cell> visited{cell_of(s), cell_of(e)};

  // Boundary crossings x = k (and y = m). A crossing that lands exactly on a
  // lattice corner owns the corner cell, which neither adjacent open interval
  // reaches when the axes move in opposite directions.
  auto crossings = [&](double a0, double d0, double a1, double d1, double from, double to,
                       bool x_axis) {
    if (d0 == 0.0) return;
    const double lo = std::min(from, to);
    const double hi = std::max(from, to);
    for (double k = std::floor(lo) + 1.0; k < hi; k += 1.0) {
      const double t = (k - a0) / d0;
      events.push_back(t);
      const double other = std::round(a1 + t * d1);
      if ((k - a0) * d1 == (other - a1) * d0) {
        const int ki = static_cast<int>(k);
        const int oi = static_cast<int>(other);
        visited.push_back(x_axis ? Cell{ki, oi} : Cell{oi, ki});
      }
    }
  };
  crossings(a.x, d.x, a.y, d.y, s.x, e.x, true);
  crossings(a.y, d.y, a.x, d.x, s.y, e.y, false);

  std::sort(events.begin(), events.end());
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    if (events[i + 1] > events[i]) {
      visited.push_back(cell_of(at(0.5 * (events[i] + events[i + 1]))));
    }
  }

  for (const Cell& c : visited) {
    if (c.x >= 0 && c.y >= 0 && c.x < static_cast<int>(cols) && c.y < static_cast<int>(rows)) {
      cells.push_back(c);
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace wfkit
