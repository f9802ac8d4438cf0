#include "wfkit/sampler.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "wfkit/error.hpp"
#include "wfkit/raster.hpp"
#include "wfkit/rng.hpp"

namespace wfkit {

void SamplerConfig::check() const {
  if (!(eta > 0.0)) throw ValidationError("sampler eta must be positive");
  if (raster_size < 1) throw ValidationError("sampler raster_size must be >= 1");
}

const char* to_string(SampleLabel label) {
  return label == SampleLabel::kPositive ? "positive" : "negative";
}

const char* to_string(SampleOrigin origin) {
  switch (origin) {
    case SampleOrigin::kStaticPositive: return "S+";
    case SampleOrigin::kStaticNegative: return "S-";
    case SampleOrigin::kDynamicPositive: return "D+";
    case SampleOrigin::kDynamicNegative: return "D-";
    case SampleOrigin::kDynamicRandom: return "D*";
  }
  return "?";
}

Grid2D rasterize_gt(const Wireframe& w, std::size_t raster_size) {
  require_valid(w);
  Grid2D bitmap(raster_size, raster_size);
  for (const Edge& e : w.edges) {
    const Point2 a = to_raster(w.junctions[e.a()], w.width, w.height, raster_size, raster_size);
    const Point2 b = to_raster(w.junctions[e.b()], w.width, w.height, raster_size, raster_size);
    for (const Cell& c : supercover(a, b, raster_size, raster_size)) {
      bitmap(static_cast<std::size_t>(c.y), static_cast<std::size_t>(c.x)) = 1.0;
    }
  }
  return bitmap;
}

double hardness(const Segment& candidate, const Grid2D& bitmap, double width, double height) {
  const Point2 a = to_raster(candidate.p1, width, height, bitmap.cols(), bitmap.rows());
  const Point2 b = to_raster(candidate.p2, width, height, bitmap.cols(), bitmap.rows());
  const auto cells = supercover(a, b, bitmap.cols(), bitmap.rows());
  if (cells.empty()) return 0.0;
  double sum = 0.0;
  for (const Cell& c : cells) sum += bitmap(static_cast<std::size_t>(c.y), static_cast<std::size_t>(c.x));
  return sum / static_cast<double>(cells.size());
}

std::vector<Edge> static_negatives(const Wireframe& w, const SamplerConfig& cfg) {
  cfg.check();
  const Grid2D bitmap = rasterize_gt(w, cfg.raster_size);
  const std::set<Edge> gt_edges(w.edges.begin(), w.edges.end());

  struct Scored {
    Edge pair;
    double hardness;
  };
  std::vector<Scored> pool;
  const std::size_t n = w.junctions.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Edge pair(i, j);
      if (gt_edges.contains(pair)) continue;
      pool.push_back({pair, hardness({w.junctions[i], w.junctions[j]}, bitmap, w.width, w.height)});
    }
  }
  const std::size_t keep = std::min(cfg.hard_pool_size, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end(),
                    [](const Scored& x, const Scored& y) {
                      return x.hardness != y.hardness ? x.hardness > y.hardness : x.pair < y.pair;
                    });
  std::vector<Edge> out;
  out.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) out.push_back(pool[k].pair);
  return out;
}

std::vector<LabeledLine> sample_static(const Wireframe& w, const SamplerConfig& cfg,
                                       std::uint64_t seed) {
  const auto pool = static_negatives(w, cfg);
  Rng rng(seed);
  std::vector<LabeledLine> out;
  auto line_of = [&](const Edge& e) { return ScoredLine{w.junctions[e.a()], w.junctions[e.b()], 1.0}; };
  if (!w.edges.empty()) {
    for (std::size_t k = 0; k < cfg.n_s_pos; ++k) {
      out.push_back({line_of(w.edges[rng.uniform_index(w.edges.size())]), SampleLabel::kPositive,
                     SampleOrigin::kStaticPositive});
    }
  }
  if (!pool.empty()) {
    for (std::size_t k = 0; k < cfg.n_s_neg; ++k) {
      out.push_back({line_of(pool[rng.uniform_index(pool.size())]), SampleLabel::kNegative,
                     SampleOrigin::kStaticNegative});
    }
  }
  return out;
}

std::vector<JunctionMatch> match_junctions(const std::vector<ScoredJunction>& pred,
                                           const Wireframe& gt, double eta) {
  std::vector<JunctionMatch> out;
  out.reserve(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    JunctionMatch m{i, std::nullopt, std::numeric_limits<double>::infinity()};
    std::size_t best = 0;
    for (std::size_t j = 0; j < gt.junctions.size(); ++j) {
      const double d = distance(pred[i].p, gt.junctions[j]);
      if (d < m.distance) {
        m.distance = d;
        best = j;
      }
    }
    if (m.distance < eta) m.gt_index = best;
    out.push_back(m);
  }
  return out;
}

DynamicPools dynamic_pools(const std::vector<JunctionMatch>& matches, const Wireframe& gt,
                           const std::vector<Edge>& s_neg_pool) {
  const std::set<Edge> gt_edges(gt.edges.begin(), gt.edges.end());
  const std::set<Edge> hard(s_neg_pool.begin(), s_neg_pool.end());
  DynamicPools pools;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    for (std::size_t j = i + 1; j < matches.size(); ++j) {
      const Edge pair(i, j);
      pools.all.push_back(pair);
      const auto& mi = matches[i].gt_index;
      const auto& mj = matches[j].gt_index;
      if (!mi || !mj || *mi == *mj) continue;
      const Edge matched(*mi, *mj);
      if (gt_edges.contains(matched)) pools.positive.push_back(pair);
      if (hard.contains(matched)) pools.negative.push_back(pair);
    }
  }
  return pools;
}

std::vector<LabeledLine> sample_dynamic(const std::vector<ScoredJunction>& pred,
                                        const Wireframe& gt, const std::vector<Edge>& s_neg_pool,
                                        const SamplerConfig& cfg, std::uint64_t seed) {
  cfg.check();
  require_valid(gt);
  const auto matches = match_junctions(pred, gt, cfg.eta);
  const DynamicPools pools = dynamic_pools(matches, gt, s_neg_pool);
  const std::set<Edge> positive(pools.positive.begin(), pools.positive.end());

  Rng rng(seed);
  std::vector<LabeledLine> out;
  auto line_of = [&](const Edge& e) { return ScoredLine{pred[e.a()].p, pred[e.b()].p, 1.0}; };
  auto draw = [&](const std::vector<Edge>& pool, std::size_t count, auto&& label_of,
                  SampleOrigin origin) {
    if (pool.empty()) return;
    for (std::size_t k = 0; k < count; ++k) {
      const Edge& e = pool[rng.uniform_index(pool.size())];
      out.push_back({line_of(e), label_of(e), origin});
    }
  };
  draw(pools.positive, cfg.n_d_pos, [](const Edge&) { return SampleLabel::kPositive; },
       SampleOrigin::kDynamicPositive);
  draw(pools.negative, cfg.n_d_neg, [](const Edge&) { return SampleLabel::kNegative; },
       SampleOrigin::kDynamicNegative);
  draw(pools.all, cfg.n_d_rand,
       [&](const Edge& e) {
         return positive.contains(e) ? SampleLabel::kPositive : SampleLabel::kNegative;
       },
       SampleOrigin::kDynamicRandom);
  return out;
}

}  // namespace wfkit
