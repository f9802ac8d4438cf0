#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wfkit/grid.hpp"
#include "wfkit/junction_codec.hpp"
#include "wfkit/model.hpp"

namespace wfkit {

struct SamplerConfig {
  std::size_t n_s_pos = 300;
  std::size_t n_s_neg = 40;
  std::size_t n_d_pos = 300;
  std::size_t n_d_neg = 80;
  std::size_t n_d_rand = 600;
  double eta = 1.5;  // junction match radius, grid units
  std::size_t hard_pool_size = 2000;
  std::size_t raster_size = 64;

  void check() const;
};

enum class SampleLabel { kPositive, kNegative };
enum class SampleOrigin { kStaticPositive, kStaticNegative, kDynamicPositive, kDynamicNegative, kDynamicRandom };

const char* to_string(SampleLabel label);
const char* to_string(SampleOrigin origin);

struct LabeledLine {
  ScoredLine line;
  SampleLabel label = SampleLabel::kNegative;
  SampleOrigin origin = SampleOrigin::kDynamicRandom;
};

struct JunctionMatch {
  std::size_t pred_index = 0;
  std::optional<std::size_t> gt_index;  // set iff distance < eta
  double distance = 0.0;
};

// Binary raster_size x raster_size bitmap of all ground-truth edges.
Grid2D rasterize_gt(const Wireframe& w, std::size_t raster_size);

// Mean bitmap value over the supercover of the candidate, whose endpoints are
// given in the wireframe coordinate space (width x height).
double hardness(const Segment& candidate, const Grid2D& bitmap, double width, double height);

// Hard-negative pool: the hard_pool_size non-edge junction pairs with the
// highest hardness, ties broken by (i, j). Returned in rank order.
std::vector<Edge> static_negatives(const Wireframe& w, const SamplerConfig& cfg);

std::vector<LabeledLine> sample_static(const Wireframe& w, const SamplerConfig& cfg,
                                       std::uint64_t seed);

std::vector<JunctionMatch> match_junctions(const std::vector<ScoredJunction>& pred,
                                           const Wireframe& gt, double eta);

// Candidate pools built from every unordered pair of predicted junctions.
struct DynamicPools {
  std::vector<Edge> positive;  // both matched, matched pair is a gt edge
  std::vector<Edge> negative;  // both matched, matched pair is in the hard pool
  std::vector<Edge> all;
};

DynamicPools dynamic_pools(const std::vector<JunctionMatch>& matches, const Wireframe& gt,
                           const std::vector<Edge>& s_neg_pool);

// Draws from the dynamic pools; endpoints are predicted positions. Random
// draws are labeled positive iff the pair qualifies for the positive pool.
std::vector<LabeledLine> sample_dynamic(const std::vector<ScoredJunction>& pred,
                                        const Wireframe& gt, const std::vector<Edge>& s_neg_pool,
                                        const SamplerConfig& cfg, std::uint64_t seed);

}  // namespace wfkit
