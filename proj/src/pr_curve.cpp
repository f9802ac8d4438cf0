#include "wfkit/pr_curve.hpp"

#include <algorithm>
#include <numeric>

#include "wfkit/error.hpp"

namespace wfkit {

double average_precision(const std::vector<PRPoint>& points) {
  // Precision envelope from the right.
  std::vector<double> envelope(points.size());
  double best = 0.0;
  for (std::size_t k = points.size(); k-- > 0;) {
    best = std::max(best, points[k].precision);
    envelope[k] = best;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    ap += (points[k].recall - prev_recall) * envelope[k];
    prev_recall = points[k].recall;
  }
  return ap;
}

PRCurve pr_from_ranked(const std::vector<double>& scores, const std::vector<bool>& is_tp,
                       std::size_t total_gt) {
  if (total_gt == 0) throw ValidationError("PR curve undefined: no ground truth");
  if (scores.size() != is_tp.size()) throw ValidationError("scores and outcomes differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  PRCurve curve;
  curve.points.reserve(order.size());
  std::size_t tp = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (is_tp[order[k]]) ++tp;
    curve.points.push_back({scores[order[k]], static_cast<double>(tp) / static_cast<double>(k + 1),
                            static_cast<double>(tp) / static_cast<double>(total_gt)});
  }
  curve.ap = average_precision(curve.points);
  return curve;
}

}  // namespace wfkit
