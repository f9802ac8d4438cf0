#pragma once

#include <cstddef>
#include <vector>

namespace wfkit {

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Points ordered by decreasing threshold (so recall is non-decreasing).
struct PRCurve {
  std::vector<PRPoint> points;
  double ap = 0.0;
};

// All-point interpolated area: each recall increment is weighted by the best
// precision reached at that recall or beyond. Points must be ordered by
// non-decreasing recall; the curve starts from recall 0.
double average_precision(const std::vector<PRPoint>& points);

// One point per prediction after sorting by score descending (stable, so
// ties keep input order). total_gt must be positive.
PRCurve pr_from_ranked(const std::vector<double>& scores, const std::vector<bool>& is_tp,
                       std::size_t total_gt);

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn);

}  // namespace wfkit

#include "wfkit/detail/parallel.hpp"
