#include "wfkit/metrics_heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wfkit/error.hpp"
#include "wfkit/raster.hpp"

namespace wfkit {

std::vector<double> HeatmapEvalConfig::default_thresholds() {
  std::vector<double> t;
  for (int k = 1; k <= 99; ++k) t.push_back(k / 100.0);
  return t;
}

double HeatmapEvalConfig::tolerance_px() const {
  if (tolerance) return *tolerance;
  const auto r = static_cast<double>(resolution);
  return 0.0075 * std::hypot(r, r);
}

void HeatmapEvalConfig::check() const {
  if (resolution < 8) throw ValidationError("heat-map resolution must be >= 8");
  if (!(tolerance_px() > 0.0)) throw ValidationError("heat-map tolerance must be positive");
  if (thresholds.empty()) throw ValidationError("heat-map threshold list is empty");
  for (std::size_t k = 1; k < thresholds.size(); ++k) {
    if (!(thresholds[k] > thresholds[k - 1])) {
      throw ValidationError("heat-map thresholds must be strictly increasing");
    }
  }
}

ConfidenceMap rasterize_scored(const std::vector<ScoredLine>& lines, const HeatmapEvalConfig& cfg,
                               double width, double height) {
  const std::size_t r = cfg.resolution;
  ConfidenceMap map(r, r);
  for (const ScoredLine& line : lines) {
    const Point2 a = to_raster(line.p1, width, height, r, r);
    const Point2 b = to_raster(line.p2, width, height, r, r);
    for (const Cell& c : supercover(a, b, r, r)) {
      double& v = map(static_cast<std::size_t>(c.y), static_cast<std::size_t>(c.x));
      v = std::max(v, line.score);
    }
  }
  return map;
}

namespace {

struct Offset {
  int dx;
  int dy;
};

// Integer offsets within the tolerance grouped by squared length, ascending.
// Inside a group offsets are ordered by (dy, dx), i.e. pred pixel row-major
// order for a fixed gt pixel.
std::vector<std::vector<Offset>> offset_groups(double tolerance) {
  const int reach = static_cast<int>(std::floor(tolerance));
  std::map<int, std::vector<Offset>> by_length;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const int d2 = dx * dx + dy * dy;
      if (std::sqrt(static_cast<double>(d2)) <= tolerance) by_length[d2].push_back({dx, dy});
    }
  }
  std::vector<std::vector<Offset>> groups;
  for (auto& [d2, offsets] : by_length) groups.push_back(std::move(offsets));
  return groups;
}

}  // namespace

PixelMatchCounts match_pixels(const Grid2D& pred, double threshold, const Grid2D& gt,
                              double tolerance) {
  if (pred.rows() != gt.rows() || pred.cols() != gt.cols()) {
    throw ValidationError("prediction and ground-truth maps differ in shape");
  }
  const std::size_t rows = gt.rows();
  const std::size_t cols = gt.cols();
  PixelMatchCounts counts;
  std::vector<char> pred_free(rows * cols, 0);
  std::vector<char> gt_free(rows * cols, 0);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    if (pred.values()[i] >= threshold) {
      pred_free[i] = 1;
      ++counts.pred_on;
    }
    if (gt.values()[i] > 0.0) {
      gt_free[i] = 1;
      ++counts.gt_on;
    }
  }
  for (const auto& group : offset_groups(tolerance)) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t g = r * cols + c;
        for (const Offset& o : group) {
          if (!gt_free[g]) break;
          const long pr = static_cast<long>(r) + o.dy;
          const long pc = static_cast<long>(c) + o.dx;
          if (pr < 0 || pc < 0 || pr >= static_cast<long>(rows) || pc >= static_cast<long>(cols)) continue;
          const std::size_t p = static_cast<std::size_t>(pr) * cols + static_cast<std::size_t>(pc);
          if (pred_free[p]) {
            pred_free[p] = 0;
            gt_free[g] = 0;
            ++counts.matched;
          }
        }
      }
    }
  }
  return counts;
}

namespace {

// Per-threshold counts for one image. Thresholds that select the same pixel
// set share one matching.
std::vector<PixelMatchCounts> sweep(const Grid2D& pred, const Grid2D& gt,
                                    const HeatmapEvalConfig& cfg) {
  std::vector<double> levels(pred.values().begin(), pred.values().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const double tol = cfg.tolerance_px();
  std::map<std::size_t, PixelMatchCounts> cache;
  std::vector<PixelMatchCounts> out;
  out.reserve(cfg.thresholds.size());
  for (double t : cfg.thresholds) {
    const auto key = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), t) - levels.begin());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, match_pixels(pred, t, gt, tol)).first;
    out.push_back(it->second);
  }
  return out;
}

HeatmapResult curve_from_counts(const std::vector<PixelMatchCounts>& totals,
                                const std::vector<double>& thresholds) {
  HeatmapResult result;
  // Highest threshold first so recall grows along the curve.
  for (std::size_t k = thresholds.size(); k-- > 0;) {
    const PixelMatchCounts& c = totals[k];
    if (c.pred_on == 0) continue;
    const double p = static_cast<double>(c.matched) / static_cast<double>(c.pred_on);
    const double r = static_cast<double>(c.matched) / static_cast<double>(c.gt_on);
    result.curve.points.push_back({thresholds[k], p, r});
    if (p + r > 0.0) result.f_h = std::max(result.f_h, 2.0 * p * r / (p + r));
  }
  result.curve.ap = average_precision(result.curve.points);
  return result;
}

}  // namespace

HeatmapResult heatmap_pr(const ConfidenceMap& pred, const ConfidenceMap& gt,
                         const HeatmapEvalConfig& cfg) {
  cfg.check();
  if (pred.rows() != gt.rows() || pred.cols() != gt.cols()) {
    throw ValidationError("prediction and ground-truth maps differ in shape");
  }
  if (std::none_of(gt.values().begin(), gt.values().end(), [](double v) { return v > 0.0; })) {
    throw ValidationError("heat-map recall undefined: ground truth is empty");
  }
  return curve_from_counts(sweep(pred, gt, cfg), cfg.thresholds);
}

HeatmapResult heatmap_pr(const PerImage<ScoredLine>& pred, const PerImage<Segment>& gt,
                         const HeatmapEvalConfig& cfg, std::size_t threads) {
  cfg.check();
  if (pred.size() != gt.size()) throw ValidationError("image sets differ");
  std::vector<const std::string*> ids;
  for (const auto& [id, lines] : gt) {
    if (!pred.contains(id)) throw ValidationError("ground-truth image '" + id + "' has no prediction");
    ids.push_back(&id);
  }
  std::vector<std::vector<PixelMatchCounts>> per_image(ids.size());
  parallel_for(ids.size(), threads, [&](std::size_t i) {
    const std::string& id = *ids[i];
    std::vector<ScoredLine> gt_lines;
    for (const Segment& s : gt.at(id)) gt_lines.push_back({s.p1, s.p2, 1.0});
    per_image[i] = sweep(rasterize_scored(pred.at(id), cfg), rasterize_scored(gt_lines, cfg), cfg);
  });
  std::vector<PixelMatchCounts> totals(cfg.thresholds.size());
  for (const auto& counts : per_image) {
    for (std::size_t k = 0; k < counts.size(); ++k) {
      totals[k].matched += counts[k].matched;
      totals[k].pred_on += counts[k].pred_on;
      totals[k].gt_on += counts[k].gt_on;
    }
  }
  if (!totals.empty() && totals.front().gt_on == 0) {
    throw ValidationError("heat-map recall undefined: ground truth is empty");
  }
  return curve_from_counts(totals, cfg.thresholds);
}

}  // namespace wfkit
