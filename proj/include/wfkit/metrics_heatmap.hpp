#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wfkit/grid.hpp"
#include "wfkit/metrics_structural.hpp"
#include "wfkit/model.hpp"
#include "wfkit/pr_curve.hpp"

namespace wfkit {

// R x R grid, each cell the highest score among lines whose supercover
// visits it (0 where no line passes).
using ConfidenceMap = Grid2D;

struct HeatmapEvalConfig {
  std::size_t resolution = 128;
  // Pixel matching radius. Defaults to 0.0075 of the map diagonal.
  std::optional<double> tolerance;
  // Strictly increasing binarization levels; defaults to 0.01 .. 0.99.
  std::vector<double> thresholds = default_thresholds();

  double tolerance_px() const;
  void check() const;

  static std::vector<double> default_thresholds();
};

// Line coordinates are given in a width x height space and scaled onto the
// cfg.resolution raster.
ConfidenceMap rasterize_scored(const std::vector<ScoredLine>& lines, const HeatmapEvalConfig& cfg,
                               double width = kCanonicalExtent, double height = kCanonicalExtent);

struct PixelMatchCounts {
  std::size_t matched = 0;
  std::size_t pred_on = 0;
  std::size_t gt_on = 0;
};

// Greedy one-to-one matching of pred pixels (value >= threshold) to gt pixels
// (value > 0): admissible pairs (distance <= tolerance) are taken in order of
// ascending distance, then gt (row, col), then pred (row, col).
PixelMatchCounts match_pixels(const Grid2D& pred, double threshold, const Grid2D& gt,
                              double tolerance);

struct HeatmapResult {
  PRCurve curve;  // curve.ap is AP^H
  double f_h = 0.0;
};

// Single pair of maps.
HeatmapResult heatmap_pr(const ConfidenceMap& pred, const ConfidenceMap& gt,
                         const HeatmapEvalConfig& cfg);

// Dataset-level AP^H/F^H: per-threshold counts are summed over all images
// before precision and recall are formed. Lines are in the canonical space.
HeatmapResult heatmap_pr(const PerImage<ScoredLine>& pred, const PerImage<Segment>& gt,
                         const HeatmapEvalConfig& cfg, std::size_t threads = 1);

}  // namespace wfkit
