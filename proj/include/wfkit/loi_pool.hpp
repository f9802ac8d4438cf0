#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "wfkit/grid.hpp"
#include "wfkit/model.hpp"

namespace wfkit {

// C x H x W feature map.
using FeatureMap = Grid3D;

struct LoiConfig {
  std::size_t n_points = 32;  // N_p
  std::size_t pool_stride = 4;

  void check() const;
  // ceil(n_points / pool_stride)
  std::size_t slots_per_channel() const { return (n_points + pool_stride - 1) / pool_stride; }
};

struct LoiFeature {
  std::vector<double> values;        // channel-major, C * slots_per_channel
  std::vector<std::size_t> argmax;   // winning sample index per slot
};

// n evenly spaced points from p1 to p2 inclusive: q_k = p1 + k (p2 - p1) / (n - 1).
std::vector<Point2> sample_points(Point2 p1, Point2 p2, std::size_t n_points);

// Bilinear read at q. Integer (x, y) reproduces fm(:, y, x); coordinates are
// clamped to [0, W-1] x [0, H-1] first.
std::vector<double> bilinear(const FeatureMap& fm, Point2 q);

LoiFeature loi_pool_forward(const FeatureMap& fm, const Segment& line, const LoiConfig& cfg);

// Gradient of <upstream, forward(fm)> with respect to fm. Throws
// ValidationError if upstream has the wrong length.
FeatureMap loi_pool_backward(const FeatureMap& fm, const Segment& line, const LoiConfig& cfg,
                             std::span<const double> upstream);

// [p1.x, p1.y, p2.x, p2.y, d.x, d.y] with d the unit vector from p2 to p1.
// Throws ValidationError for coincident endpoints.
std::array<double, 6> manual_feature(const Segment& line);

}  // namespace wfkit
