#include "wfkit/postprocess.hpp"

#include <algorithm>
#include <numeric>

#include "wfkit/error.hpp"

namespace wfkit {

namespace {
// Slack on the projection parameter when testing "inside the segment".
constexpr double kInsideEps = 1e-9;
constexpr int kMaxPasses = 32;

bool inside(double t) { return t >= -kInsideEps && t <= 1.0 + kInsideEps; }
}  // namespace

void OverlapConfig::check() const {
  if (!(eta_s > 0.0)) throw ValidationError("eta_s must be positive");
  if (!(diagonal > 0.0)) throw ValidationError("diagonal must be positive");
}

double point_segment_distance(Point2 p, const Segment& seg) {
  const Point2 d = seg.p2 - seg.p1;
  const double len2 = squared_norm(d);
  if (len2 == 0.0) return distance(p, seg.p1);
  const double t = std::clamp(dot(p - seg.p1, d) / len2, 0.0, 1.0);
  return distance(p, seg.p1 + t * d);
}

double closeness(const Segment& a, const Segment& b, double diagonal) {
  const double b_to_a = std::max(point_segment_distance(b.p1, a), point_segment_distance(b.p2, a));
  const double a_to_b = std::max(point_segment_distance(a.p1, b), point_segment_distance(a.p2, b));
  return std::min(b_to_a, a_to_b) / diagonal;
}

bool lines_close(const Segment& a, const Segment& b, const OverlapConfig& cfg) {
  return closeness(a, b, cfg.diagonal) <= cfg.eta_s;
}

double projection_parameter(Point2 p, const Segment& seg) {
  const Point2 d = seg.p2 - seg.p1;
  return dot(p - seg.p1, d) / squared_norm(d);
}

bool overlap_violation(const Segment& above, const Segment& line, const OverlapConfig& cfg) {
  if (above.p1 == above.p2) return false;
  return lines_close(above, line, cfg) && inside(projection_parameter(line.p1, above)) &&
         inside(projection_parameter(line.p2, above));
}

namespace {

enum class Action { kRetain, kDelete, kCut };

// Applies the rule for `line` ranked below `above`. Returns kCut only when the
// geometry actually changed.
Action apply_rule(const Segment& above, ScoredLine& line, const OverlapConfig& cfg) {
  if (above.p1 == above.p2 || !lines_close(above, line.segment(), cfg)) return Action::kRetain;
  const double t1 = projection_parameter(line.p1, above);
  const double t2 = projection_parameter(line.p2, above);
  const bool in1 = inside(t1);
  const bool in2 = inside(t2);
  if (in1 && in2) return Action::kDelete;
  if (in1 == in2) return Action::kRetain;

  Point2& p_in = in1 ? line.p1 : line.p2;
  const Point2 p_out = in1 ? line.p2 : line.p1;
  const double t_in = in1 ? t1 : t2;
  const double t_out = in1 ? t2 : t1;
  const double boundary = t_out > 1.0 ? 1.0 : 0.0;
  // Already ends at the boundary: nothing overlaps.
  if (boundary == 1.0 ? t_in >= 1.0 - kInsideEps : t_in <= kInsideEps) return Action::kRetain;
  const double s = (boundary - t_in) / (t_out - t_in);
  p_in = p_in + s * (p_out - p_in);
  return Action::kCut;
}

}  // namespace

std::vector<ScoredLine> resolve_overlaps(const std::vector<ScoredLine>& lines,
                                         const OverlapConfig& cfg) {
  cfg.check();
  std::vector<std::size_t> order(lines.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lines[a].score > lines[b].score; });

  std::vector<ScoredLine> work = lines;
  std::vector<bool> alive(lines.size(), true);
  bool changed = true;
  for (int pass = 0; changed && pass < kMaxPasses; ++pass) {
    changed = false;
    for (std::size_t a = 0; a < order.size(); ++a) {
      const std::size_t i = order[a];
      if (!alive[i]) continue;
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        const std::size_t j = order[b];
        if (!alive[j]) continue;
        switch (apply_rule(work[i].segment(), work[j], cfg)) {
          case Action::kDelete:
            alive[j] = false;
            changed = true;
            break;
          case Action::kCut:
            changed = true;
            break;
          case Action::kRetain:
            break;
        }
      }
    }
  }

  std::vector<ScoredLine> out;
  for (std::size_t k = 0; k < work.size(); ++k) {
    if (alive[k]) out.push_back(work[k]);
  }
  return out;
}

}  // namespace wfkit
