#include "wfkit/metrics_structural.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "wfkit/error.hpp"

namespace wfkit {

double structural_distance(const Segment& pred, const Segment& gt) {
  const double forward = squared_norm(pred.p1 - gt.p1) + squared_norm(pred.p2 - gt.p2);
  const double flipped = squared_norm(pred.p1 - gt.p2) + squared_norm(pred.p2 - gt.p1);
  return std::min(forward, flipped);
}

namespace {

template <typename T>
std::vector<std::size_t> rank_by_score(const std::vector<T>& items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a].score > items[b].score; });
  return order;
}

template <typename P, typename G>
void require_same_images(const PerImage<P>& pred, const PerImage<G>& gt) {
  auto p = pred.begin();
  auto g = gt.begin();
  for (; p != pred.end() && g != gt.end(); ++p, ++g) {
    if (p->first != g->first) throw ValidationError("image sets differ at '" + p->first + "' / '" + g->first + "'");
  }
  if (p != pred.end()) throw ValidationError("prediction image '" + p->first + "' has no ground truth");
  if (g != gt.end()) throw ValidationError("ground-truth image '" + g->first + "' has no prediction");
}

}  // namespace

std::vector<MatchOutcome> match_lines(const std::vector<ScoredLine>& pred,
                                      const std::vector<Segment>& gt, double theta,
                                      const std::string& image_id) {
  if (!(theta > 0.0)) throw ValidationError("sAP threshold must be positive");
  std::vector<MatchOutcome> out(pred.size());
  std::vector<bool> claimed(gt.size(), false);
  for (std::size_t j : rank_by_score(pred)) {
    MatchOutcome& o = out[j];
    o.pred_index = j;
    o.image_id = image_id;
    o.score = pred[j].score;
    if (gt.empty()) continue;
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    const Segment s = pred[j].segment();
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double d = structural_distance(s, gt[g]);
      if (d < best) {
        best = d;
        nearest = g;
      }
    }
    if (best <= theta && !claimed[nearest]) {
      o.is_tp = true;
      o.matched_gt = nearest;
    }
    claimed[nearest] = true;
  }
  return out;
}

PRCurve pooled_curve(const std::vector<std::vector<MatchOutcome>>& per_image, std::size_t total_gt) {
  std::vector<double> scores;
  std::vector<bool> is_tp;
  for (const auto& outcomes : per_image) {
    for (const MatchOutcome& o : outcomes) {
      scores.push_back(o.score);
      is_tp.push_back(o.is_tp);
    }
  }
  return pr_from_ranked(scores, is_tp, total_gt);
}

PRCurve structural_ap(const PerImage<ScoredLine>& pred, const PerImage<Segment>& gt, double theta,
                      std::size_t threads) {
  require_same_images(pred, gt);
  std::vector<const std::string*> ids;
  std::size_t total_gt = 0;
  for (const auto& [id, lines] : gt) {
    ids.push_back(&id);
    total_gt += lines.size();
  }
  if (total_gt == 0) throw ValidationError("sAP undefined: no ground-truth lines");
  std::vector<std::vector<MatchOutcome>> per_image(ids.size());
  parallel_for(ids.size(), threads, [&](std::size_t i) {
    const std::string& id = *ids[i];
    per_image[i] = match_lines(pred.at(id), gt.at(id), theta, id);
  });
  return pooled_curve(per_image, total_gt);
}

std::vector<MatchOutcome> match_junctions_one_shot(const std::vector<ScoredJunction>& pred,
                                                   const std::vector<Point2>& gt, double tau,
                                                   const std::string& image_id) {
  if (!(tau > 0.0)) throw ValidationError("junction threshold must be positive");
  std::vector<MatchOutcome> out(pred.size());
  std::vector<bool> claimed(gt.size(), false);
  for (std::size_t j : rank_by_score(pred)) {
    MatchOutcome& o = out[j];
    o.pred_index = j;
    o.image_id = image_id;
    o.score = pred[j].score;
    std::optional<std::size_t> nearest;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (claimed[g]) continue;
      const double d = distance(pred[j].p, gt[g]);
      if (d < best) {
        best = d;
        nearest = g;
      }
    }
    if (nearest && best <= tau) {
      claimed[*nearest] = true;
      o.is_tp = true;
      o.matched_gt = nearest;
    }
  }
  return out;
}

JunctionMapResult junction_map(const PerImage<ScoredJunction>& pred, const PerImage<Point2>& gt,
                               const std::vector<double>& thresholds, std::size_t threads) {
  require_same_images(pred, gt);
  if (thresholds.empty()) throw ValidationError("junction mAP needs at least one threshold");
  std::vector<const std::string*> ids;
  std::size_t total_gt = 0;
  for (const auto& [id, junctions] : gt) {
    ids.push_back(&id);
    total_gt += junctions.size();
  }
  if (total_gt == 0) throw ValidationError("junction mAP undefined: no ground-truth junctions");

  JunctionMapResult result;
  result.thresholds = thresholds;
  for (double tau : thresholds) {
    std::vector<std::vector<MatchOutcome>> per_image(ids.size());
    parallel_for(ids.size(), threads, [&](std::size_t i) {
      const std::string& id = *ids[i];
      per_image[i] = match_junctions_one_shot(pred.at(id), gt.at(id), tau, id);
    });
    result.curves.push_back(pooled_curve(per_image, total_gt));
    result.mean_ap += result.curves.back().ap;
  }
  result.mean_ap /= static_cast<double>(thresholds.size());
  return result;
}

}  // namespace wfkit
