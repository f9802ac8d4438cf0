#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wfkit/junction_codec.hpp"
#include "wfkit/model.hpp"
#include "wfkit/pr_curve.hpp"

namespace wfkit {

struct MatchOutcome {
  std::size_t pred_index = 0;
  bool is_tp = false;
  std::optional<std::size_t> matched_gt;  // set iff is_tp
  std::string image_id;
  double score = 0.0;
};

template <typename T>
using PerImage = std::map<std::string, std::vector<T>>;

// min over both endpoint orientations of |p1 - u|^2 + |p2 - v|^2.
double structural_distance(const Segment& pred, const Segment& gt);

// Structural matching of one image. Predictions are ranked by score
// (input order on ties); each ranked prediction claims its nearest gt line
// g* (lowest index on ties) and is a true positive iff
// structural_distance <= theta and no higher-ranked prediction already
// claimed g*. A prediction never falls back to a farther gt line.
// Outcomes are returned in input order.
std::vector<MatchOutcome> match_lines(const std::vector<ScoredLine>& pred,
                                      const std::vector<Segment>& gt, double theta,
                                      const std::string& image_id = {});

// Pooled sAP over all images. Throws ValidationError if the image sets
// differ or there is no ground truth at all.
PRCurve structural_ap(const PerImage<ScoredLine>& pred, const PerImage<Segment>& gt, double theta,
                      std::size_t threads = 1);

// One-shot junction matching of one image: ranked predictions take their
// nearest still-unclaimed gt junction if it lies within tau.
std::vector<MatchOutcome> match_junctions_one_shot(const std::vector<ScoredJunction>& pred,
                                                   const std::vector<Point2>& gt, double tau,
                                                   const std::string& image_id = {});

struct JunctionMapResult {
  std::vector<double> thresholds;
  std::vector<PRCurve> curves;  // aligned with thresholds
  double mean_ap = 0.0;
};

inline const std::vector<double> kDefaultJunctionThresholds{0.5, 1.0, 2.0};

JunctionMapResult junction_map(const PerImage<ScoredJunction>& pred, const PerImage<Point2>& gt,
                               const std::vector<double>& thresholds = kDefaultJunctionThresholds,
                               std::size_t threads = 1);

// Pools per-image outcomes in image-id order and builds the PR curve.
PRCurve pooled_curve(const std::vector<std::vector<MatchOutcome>>& per_image, std::size_t total_gt);

}  // namespace wfkit
