#include "wfkit/loi_pool.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wfkit/error.hpp"

namespace wfkit {

void LoiConfig::check() const {
  if (n_points < 2) throw ValidationError("LoI n_points must be >= 2");
  if (pool_stride < 1 || pool_stride > n_points) {
    throw ValidationError("LoI pool_stride must be in [1, n_points]");
  }
}

std::vector<Point2> sample_points(Point2 p1, Point2 p2, std::size_t n_points) {
  if (n_points < 2) throw ValidationError("sample_points needs n_points >= 2");
  std::vector<Point2> points;
  points.reserve(n_points);
  const double last = static_cast<double>(n_points - 1);
  const Point2 d = p2 - p1;
  for (std::size_t k = 0; k + 1 < n_points; ++k) {
    const double kk = static_cast<double>(k);
    points.push_back({p1.x + kk * d.x / last, p1.y + kk * d.y / last});
  }
  points.push_back(p2);
  return points;
}

namespace {

struct Corners {
  std::size_t x0, x1, y0, y1;
  double w00, w01, w10, w11;  // w<row><col>
};

Corners corners(const FeatureMap& fm, Point2 q) {
  const double max_x = static_cast<double>(fm.cols() - 1);
  const double max_y = static_cast<double>(fm.rows() - 1);
  const double x = std::clamp(q.x, 0.0, max_x);
  const double y = std::clamp(q.y, 0.0, max_y);
  Corners c{};
  c.x0 = static_cast<std::size_t>(std::floor(x));
  c.y0 = static_cast<std::size_t>(std::floor(y));
  c.x1 = std::min(c.x0 + 1, fm.cols() - 1);
  c.y1 = std::min(c.y0 + 1, fm.rows() - 1);
  const double fx = x - static_cast<double>(c.x0);
  const double fy = y - static_cast<double>(c.y0);
  c.w00 = (1.0 - fy) * (1.0 - fx);
  c.w01 = (1.0 - fy) * fx;
  c.w10 = fy * (1.0 - fx);
  c.w11 = fy * fx;
  return c;
}

double read(const FeatureMap& fm, std::size_t ch, const Corners& c) {
  return c.w00 * fm(ch, c.y0, c.x0) + c.w01 * fm(ch, c.y0, c.x1) + c.w10 * fm(ch, c.y1, c.x0) +
         c.w11 * fm(ch, c.y1, c.x1);
}

void require_shape(const FeatureMap& fm) {
  if (fm.channels() == 0 || fm.rows() == 0 || fm.cols() == 0) {
    throw ValidationError("feature map must have C, H, W >= 1");
  }
}

}  // namespace

std::vector<double> bilinear(const FeatureMap& fm, Point2 q) {
  require_shape(fm);
  const Corners c = corners(fm, q);
  std::vector<double> out(fm.channels());
  for (std::size_t ch = 0; ch < fm.channels(); ++ch) out[ch] = read(fm, ch, c);
  return out;
}

LoiFeature loi_pool_forward(const FeatureMap& fm, const Segment& line, const LoiConfig& cfg) {
  cfg.check();
  require_shape(fm);
  const auto points = sample_points(line.p1, line.p2, cfg.n_points);
  std::vector<Corners> taps;
  taps.reserve(points.size());
  for (Point2 q : points) taps.push_back(corners(fm, q));

  const std::size_t slots = cfg.slots_per_channel();
  LoiFeature out;
  out.values.resize(fm.channels() * slots);
  out.argmax.resize(fm.channels() * slots);
  std::vector<double> sampled(cfg.n_points);
  for (std::size_t ch = 0; ch < fm.channels(); ++ch) {
    for (std::size_t k = 0; k < cfg.n_points; ++k) sampled[k] = read(fm, ch, taps[k]);
    for (std::size_t s = 0; s < slots; ++s) {
      const std::size_t begin = s * cfg.pool_stride;
      const std::size_t end = std::min(begin + cfg.pool_stride, cfg.n_points);
      std::size_t best = begin;
      for (std::size_t k = begin + 1; k < end; ++k) {
        if (sampled[k] > sampled[best]) best = k;
      }
      out.values[ch * slots + s] = sampled[best];
      out.argmax[ch * slots + s] = best;
    }
  }
  return out;
}

FeatureMap loi_pool_backward(const FeatureMap& fm, const Segment& line, const LoiConfig& cfg,
                             std::span<const double> upstream) {
  const LoiFeature forward = loi_pool_forward(fm, line, cfg);
  if (upstream.size() != forward.values.size()) {
    throw ValidationError("upstream gradient has length " + std::to_string(upstream.size()) +
                          ", expected " + std::to_string(forward.values.size()));
  }
  const auto points = sample_points(line.p1, line.p2, cfg.n_points);
  const std::size_t slots = cfg.slots_per_channel();
  FeatureMap grad(fm.channels(), fm.rows(), fm.cols());
  for (std::size_t ch = 0; ch < fm.channels(); ++ch) {
    for (std::size_t s = 0; s < slots; ++s) {
      const double g = upstream[ch * slots + s];
      if (g == 0.0) continue;
      const Corners c = corners(fm, points[forward.argmax[ch * slots + s]]);
      grad(ch, c.y0, c.x0) += g * c.w00;
      grad(ch, c.y0, c.x1) += g * c.w01;
      grad(ch, c.y1, c.x0) += g * c.w10;
      grad(ch, c.y1, c.x1) += g * c.w11;
    }
  }
  return grad;
}

std::array<double, 6> manual_feature(const Segment& line) {
  const Point2 d = line.p1 - line.p2;
  const double len = std::hypot(d.x, d.y);
  if (len == 0.0) throw ValidationError("manual_feature: coincident endpoints have no direction");
  return {line.p1.x, line.p1.y, line.p2.x, line.p2.y, d.x / len, d.y / len};
}

}  // namespace wfkit
