#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace oracle {

namespace {

struct Bound {
  double value;
  bool strict;
};

// Narrows [lower, upper] with lo <= a + t*d < hi. Returns false if empty.
bool constrain(double a, double d, double lo, double hi, Bound& lower, Bound& upper) {
  auto raise = [&](double v, bool strict) {
    if (v > lower.value || (v == lower.value && strict)) lower = {v, strict};
  };
  auto drop = [&](double v, bool strict) {
    if (v < upper.value || (v == upper.value && strict)) upper = {v, strict};
  };
  if (d == 0.0) return lo <= a && a < hi;
  if (d > 0.0) {
    raise((lo - a) / d, false);
    drop((hi - a) / d, true);
  } else {
    drop((lo - a) / d, false);
    raise((hi - a) / d, true);
  }
  return true;
}

}  // namespace

CellSet supercover(wfkit::Point2 a, wfkit::Point2 b, std::size_t cols, std::size_t rows) {
  CellSet cells;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  for (int y = 0; y < static_cast<int>(rows); ++y) {
    for (int x = 0; x < static_cast<int>(cols); ++x) {
      Bound lower{0.0, false};
      Bound upper{1.0, false};
      if (!constrain(a.x, dx, x, x + 1.0, lower, upper)) continue;
      if (!constrain(a.y, dy, y, y + 1.0, lower, upper)) continue;
      const bool nonempty = lower.value < upper.value ||
                            (lower.value == upper.value && !lower.strict && !upper.strict);
      if (nonempty) cells.insert({x, y});
    }
  }
  return cells;
}

wfkit::Grid2D rasterize(const wfkit::Wireframe& w, std::size_t raster_size) {
  wfkit::Grid2D bitmap(raster_size, raster_size);
  const double sx = static_cast<double>(raster_size) / w.width;
  const double sy = static_cast<double>(raster_size) / w.height;
  for (const wfkit::Edge& e : w.edges) {
    const auto p = w.junctions[e.a()];
    const auto q = w.junctions[e.b()];
    for (auto [x, y] : supercover({p.x * sx, p.y * sy}, {q.x * sx, q.y * sy}, raster_size, raster_size)) {
      bitmap(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = 1.0;
    }
  }
  return bitmap;
}

double hardness(const wfkit::Segment& s, const wfkit::Grid2D& bitmap, double width, double height) {
  const double sx = static_cast<double>(bitmap.cols()) / width;
  const double sy = static_cast<double>(bitmap.rows()) / height;
  const auto cells = supercover({s.p1.x * sx, s.p1.y * sy}, {s.p2.x * sx, s.p2.y * sy}, bitmap.cols(),
                                bitmap.rows());
  if (cells.empty()) return 0.0;
  std::size_t set = 0;
  for (auto [x, y] : cells) set += bitmap(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) > 0.5;
  return static_cast<double>(set) / static_cast<double>(cells.size());
}

std::vector<std::pair<std::size_t, std::size_t>> hard_pairs(const wfkit::Wireframe& w, std::size_t k,
                                                            std::size_t raster_size) {
  const auto bitmap = rasterize(w, raster_size);
  struct Entry {
    double h;
    std::size_t i, j;
  };
  std::vector<Entry> all;
  for (std::size_t i = 0; i < w.junctions.size(); ++i) {
    for (std::size_t j = i + 1; j < w.junctions.size(); ++j) {
      bool is_edge = false;
      for (const auto& e : w.edges) is_edge |= (e.a() == i && e.b() == j) || (e.a() == j && e.b() == i);
      if (is_edge) continue;
      all.push_back({hardness({w.junctions[i], w.junctions[j]}, bitmap, w.width, w.height), i, j});
    }
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    if (a.h != b.h) return a.h > b.h;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t n = 0; n < all.size() && n < k; ++n) out.push_back({all[n].i, all[n].j});
  return out;
}

namespace {

double sq(double v) { return v * v; }

double endpoint_cost(const wfkit::Segment& l, wfkit::Point2 u, wfkit::Point2 v) {
  return sq(l.p1.x - u.x) + sq(l.p1.y - u.y) + sq(l.p2.x - v.x) + sq(l.p2.y - v.y);
}

// argmin over gt of min(cost(u, v), cost(v, u)); lowest index on ties.
std::pair<std::size_t, double> argmin_gt(const wfkit::Segment& l, const std::vector<wfkit::Segment>& gt) {
  std::size_t arg = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < gt.size(); ++g) {
    const double d = std::min(endpoint_cost(l, gt[g].p1, gt[g].p2), endpoint_cost(l, gt[g].p2, gt[g].p1));
    if (d < best) {
      best = d;
      arg = g;
    }
  }
  return {arg, best};
}

}  // namespace

ReplayResult replay_structural(const std::vector<wfkit::ScoredLine>& pred,
                               const std::vector<wfkit::Segment>& gt, double theta) {
  const std::size_t n = pred.size();
  // rank[j] < rank[i] means j is ranked above i.
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t above = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (pred[j].score > pred[i].score || (pred[j].score == pred[i].score && j < i)) ++above;
    }
    rank[i] = above;
  }
  ReplayResult r;
  r.is_tp.assign(n, false);
  if (gt.empty()) return r;
  for (std::size_t j = 0; j < n; ++j) {
    const auto [arg_j, dist_j] = argmin_gt(pred[j].segment(), gt);
    bool shadowed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i] < rank[j] && argmin_gt(pred[i].segment(), gt).first == arg_j) shadowed = true;
    }
    r.is_tp[j] = !shadowed && dist_j <= theta;
  }
  std::vector<double> scores;
  for (const auto& p : pred) scores.push_back(p.score);
  r.ap = ap_bruteforce(scores, r.is_tp, gt.size());
  return r;
}

double ap_bruteforce(const std::vector<double>& scores, const std::vector<bool>& is_tp,
                     std::size_t total_gt) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<double> precision(n);
  std::vector<double> recall(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t tp = 0;
    for (std::size_t m = 0; m <= k; ++m) tp += is_tp[order[m]];
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / static_cast<double>(total_gt);
  }
  double ap = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double best = 0.0;
    for (std::size_t m = k; m < n; ++m) best = std::max(best, precision[m]);
    ap += (recall[k] - (k == 0 ? 0.0 : recall[k - 1])) * best;
  }
  return ap;
}

FdProbe fd_probe(const wfkit::FeatureMap& fm, const wfkit::Segment& line, const wfkit::LoiConfig& cfg,
                 const std::vector<double>& upstream, double h) {
  wfkit::FeatureMap probe = fm;
  FdProbe r{wfkit::FeatureMap(fm.channels(), fm.rows(), fm.cols()),
            wfkit::FeatureMap(fm.channels(), fm.rows(), fm.cols()),
            wfkit::FeatureMap(fm.channels(), fm.rows(), fm.cols()), std::vector<bool>(fm.size(), false)};
  const auto base = wfkit::loi_pool_forward(probe, line, cfg);
  auto objective = [&](const std::vector<double>& out) {
    double sum = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) sum += upstream[k] * out[k];
    return sum;
  };
  const double mid = objective(base.values);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double saved = probe.values()[i];
    probe.values()[i] = saved + h;
    const auto up = wfkit::loi_pool_forward(probe, line, cfg);
    probe.values()[i] = saved - h;
    const auto down = wfkit::loi_pool_forward(probe, line, cfg);
    probe.values()[i] = saved;
    const double f_up = objective(up.values);
    const double f_down = objective(down.values);
    r.central.values()[i] = (f_up - f_down) / (2.0 * h);
    r.forward.values()[i] = (f_up - mid) / h;
    r.backward.values()[i] = (mid - f_down) / h;
    r.kink[i] = up.argmax != base.argmax || down.argmax != base.argmax;
  }
  return r;
}

}  // namespace oracle
