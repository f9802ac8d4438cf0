#pragma once

#include <cstddef>
#include <vector>

#include "wfkit/model.hpp"

namespace wfkit {

struct Cell {
  int x = 0;  // column
  int y = 0;  // row

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

// Supercover walk of the closed segment a-b in raster units. Cell (x, y) is
// the half-open square [x, x+1) x [y, y+1); a cell is visited iff it contains
// at least one point of the segment. Cells outside [0, cols) x [0, rows) are
// dropped. The result is unique and sorted row-major, so it does not depend on
// endpoint order.
std::vector<Cell> supercover(Point2 a, Point2 b, std::size_t cols, std::size_t rows);

// Maps a point from a width x height coordinate space onto a cols x rows raster.
inline Point2 to_raster(Point2 p, double width, double height, std::size_t cols,
                        std::size_t rows) {
  return {p.x * static_cast<double>(cols) / width, p.y * static_cast<double>(rows) / height};
}

}  // namespace wfkit
