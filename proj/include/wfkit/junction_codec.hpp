#pragma once

#include <cstddef>
#include <vector>

#include "wfkit/grid.hpp"
#include "wfkit/model.hpp"

namespace wfkit {

struct BinShape {
  std::size_t rows = 128;  // H_b
  std::size_t cols = 128;  // W_b
};

// Junction likelihood grid plus the per-bin sub-bin offset of the junction.
// offsets has two channels (dx, dy) in bin units, each in [-0.5, 0.5).
// width/height give the coordinate space the bins tile.
struct JunctionMaps {
  Grid2D likelihood;
  Grid3D offsets;
  double width = kCanonicalExtent;
  double height = kCanonicalExtent;

  BinShape bins() const { return {likelihood.rows(), likelihood.cols()}; }
};

struct ScoredJunction {
  Point2 p;
  double score = 0.0;

  friend bool operator==(const ScoredJunction&, const ScoredJunction&) = default;
};

// Center of bin (bx, by) in bin units.
inline Point2 bin_center(std::size_t bx, std::size_t by) {
  return {static_cast<double>(bx) + 0.5, static_cast<double>(by) + 0.5};
}

// J(b) = 1 for every bin holding a junction, O(b) = p - center(b). When a bin
// holds several junctions the one nearest the bin center wins (lowest index on
// ties). Throws ValidationError naming the first junction outside the grid.
JunctionMaps encode(const Wireframe& w, BinShape bins);

// Keeps cells equal to the maximum of their 3x3 neighborhood (truncated at the
// border) and zeroes the rest. Ties all survive.
Grid2D nms(const Grid2D& likelihood);

// Up to k bins with the highest positive suppressed likelihood, sorted by
// score descending (row-major order on ties). Positions are mapped back into
// the maps' coordinate space.
std::vector<ScoredJunction> decode_topk(const JunctionMaps& maps, std::size_t k);

}  // namespace wfkit
