#include "wfkit/junction_codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wfkit/error.hpp"

namespace wfkit {

JunctionMaps encode(const Wireframe& w, BinShape bins) {
  if (bins.rows == 0 || bins.cols == 0) throw ValidationError("bin shape must be positive");
  if (!(w.width > 0.0 && w.height > 0.0)) throw ValidationError("coordinate space must be positive");

  JunctionMaps maps;
  maps.likelihood = Grid2D(bins.rows, bins.cols);
  maps.offsets = Grid3D(2, bins.rows, bins.cols);
  maps.width = w.width;
  maps.height = w.height;

  const double sx = static_cast<double>(bins.cols) / w.width;
  const double sy = static_cast<double>(bins.rows) / w.height;
  // Squared offset of the junction currently owning each bin.
  std::vector<double> owner_dist(bins.rows * bins.cols, std::numeric_limits<double>::infinity());

  for (std::size_t i = 0; i < w.junctions.size(); ++i) {
    const Point2 p{w.junctions[i].x * sx, w.junctions[i].y * sy};
    const double fx = std::floor(p.x);
    const double fy = std::floor(p.y);
    if (!is_finite(p) || fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(bins.cols) ||
        fy >= static_cast<double>(bins.rows)) {
      throw ValidationError("junction " + std::to_string(i) + " lies outside the bin grid");
    }
    const auto bx = static_cast<std::size_t>(fx);
    const auto by = static_cast<std::size_t>(fy);
    const Point2 offset = p - bin_center(bx, by);
    const double d2 = squared_norm(offset);
    double& owner = owner_dist[by * bins.cols + bx];
    if (d2 < owner) {
      owner = d2;
      maps.likelihood(by, bx) = 1.0;
      maps.offsets(0, by, bx) = offset.x;
      maps.offsets(1, by, bx) = offset.y;
    }
  }
  return maps;
}

Grid2D nms(const Grid2D& likelihood) {
  const std::size_t rows = likelihood.rows();
  const std::size_t cols = likelihood.cols();
  Grid2D out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t r0 = r == 0 ? 0 : r - 1;
    const std::size_t r1 = std::min(rows - 1, r + 1);
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t c0 = c == 0 ? 0 : c - 1;
      const std::size_t c1 = std::min(cols - 1, c + 1);
      double peak = likelihood(r, c);
      for (std::size_t rr = r0; rr <= r1; ++rr) {
        for (std::size_t cc = c0; cc <= c1; ++cc) peak = std::max(peak, likelihood(rr, cc));
      }
      if (likelihood(r, c) == peak) out(r, c) = likelihood(r, c);
    }
  }
  return out;
}

std::vector<ScoredJunction> decode_topk(const JunctionMaps& maps, std::size_t k) {
  const Grid2D suppressed = nms(maps.likelihood);
  const std::size_t cols = suppressed.cols();
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < suppressed.size(); ++i) {
    if (suppressed.values()[i] > 0.0) candidates.push_back(i);
  }
  const std::size_t keep = std::min(k, candidates.size());
  const auto score_desc = [&](std::size_t a, std::size_t b) {
    const double sa = suppressed.values()[a];
    const double sb = suppressed.values()[b];
    return sa != sb ? sa > sb : a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), score_desc);
  candidates.resize(keep);

  const double to_x = maps.width / static_cast<double>(cols);
  const double to_y = maps.height / static_cast<double>(suppressed.rows());
  std::vector<ScoredJunction> out;
  out.reserve(keep);
  for (std::size_t index : candidates) {
    const std::size_t by = index / cols;
    const std::size_t bx = index % cols;
    const Point2 c = bin_center(bx, by);
    const Point2 p{(c.x + maps.offsets(0, by, bx)) * to_x, (c.y + maps.offsets(1, by, bx)) * to_y};
    out.push_back({p, suppressed.values()[index]});
  }
  return out;
}

}  // namespace wfkit
