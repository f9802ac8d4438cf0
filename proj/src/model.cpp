#include "wfkit/model.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "wfkit/error.hpp"

namespace wfkit {

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

double squared_norm(Point2 p) { return dot(p, p); }

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double Wireframe::diagonal() const { return std::hypot(width, height); }

namespace {

bool score_ok(double s) { return std::isfinite(s) && s >= 0.0 && s <= 1.0; }

void check_scores(const std::vector<double>& scores, const char* what,
                  std::vector<Violation>& out) {
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (!score_ok(scores[k])) {
      out.push_back({ViolationKind::kScoreOutOfRange, k,
                     std::string(what) + " " + std::to_string(k) +
                         " outside [0,1]"});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const Wireframe& w) {
  std::vector<Violation> out;
  if (!(std::isfinite(w.width) && w.width > 0.0 && std::isfinite(w.height) &&
        w.height > 0.0)) {
    out.push_back({ViolationKind::kBadExtent, 0, "coordinate space must be positive"});
  }
  for (std::size_t i = 0; i < w.junctions.size(); ++i) {
    const Point2 p = w.junctions[i];
    if (!is_finite(p)) {
      out.push_back({ViolationKind::kNonFiniteJunction, i,
                     "junction " + std::to_string(i) + " not finite"});
    } else if (p.x < 0.0 || p.x >= w.width || p.y < 0.0 || p.y >= w.height) {
      out.push_back({ViolationKind::kJunctionOutOfBounds, i,
                     "junction " + std::to_string(i) + " out of bounds"});
    }
  }
  std::set<Edge> seen;
  for (std::size_t k = 0; k < w.edges.size(); ++k) {
    const Edge& e = w.edges[k];
    if (e.b() >= w.junctions.size()) {
      out.push_back({ViolationKind::kEdgeIndexOutOfRange, k,
                     "edge " + std::to_string(k) + " references missing junction"});
    }
    if (e.a() == e.b()) {
      out.push_back({ViolationKind::kSelfLoop, k, "self-loop at edge " + std::to_string(k)});
    }
    if (!seen.insert(e).second) {
      out.push_back({ViolationKind::kDuplicateEdge, k,
                     "duplicate edge " + std::to_string(k)});
    }
  }
  if (w.junction_scores) {
    if (w.junction_scores->size() != w.junctions.size()) {
      out.push_back({ViolationKind::kJunctionScoreLength, w.junction_scores->size(),
                     "junction_scores length differs from junction count"});
    }
    check_scores(*w.junction_scores, "junction score", out);
  }
  if (w.line_scores) {
    if (w.line_scores->size() != w.edges.size()) {
      out.push_back({ViolationKind::kLineScoreLength, w.line_scores->size(),
                     "line_scores length differs from edge count"});
    }
    check_scores(*w.line_scores, "line score", out);
  }
  return out;
}

void require_valid(const Wireframe& w) {
  const auto violations = validate(w);
  if (!violations.empty()) {
    throw ValidationError("invalid wireframe: " + violations.front().message);
  }
}

std::vector<ScoredLine> to_scored_lines(const Wireframe& w) {
  require_valid(w);
  std::vector<ScoredLine> lines;
  lines.reserve(w.edges.size());
  for (std::size_t k = 0; k < w.edges.size(); ++k) {
    const Edge& e = w.edges[k];
    lines.push_back({w.junctions[e.a()], w.junctions[e.b()],
                     w.line_scores ? (*w.line_scores)[k] : 1.0});
  }
  return lines;
}

std::vector<Segment> to_segments(const Wireframe& w) {
  require_valid(w);
  std::vector<Segment> segments;
  segments.reserve(w.edges.size());
  for (const Edge& e : w.edges) {
    segments.push_back({w.junctions[e.a()], w.junctions[e.b()]});
  }
  return segments;
}

Wireframe from_scored_lines(const std::vector<ScoredLine>& lines, double width,
                            double height) {
  Wireframe w;
  w.width = width;
  w.height = height;
  w.line_scores.emplace();
  std::map<std::pair<double, double>, std::size_t> index_of;
  auto junction = [&](Point2 p) {
    auto [it, inserted] = index_of.try_emplace({p.x, p.y}, w.junctions.size());
    if (inserted) w.junctions.push_back(p);
    return it->second;
  };
  std::set<Edge> seen;
  for (const ScoredLine& line : lines) {
    if (line.p1 == line.p2) continue;
    const Edge e(junction(line.p1), junction(line.p2));
    if (!seen.insert(e).second) continue;
    w.edges.push_back(e);
    w.line_scores->push_back(line.score);
  }
  return w;
}

Wireframe to_canonical(const Wireframe& w) {
  Wireframe out = w;
  const double sx = kCanonicalExtent / w.width;
  const double sy = kCanonicalExtent / w.height;
  for (Point2& p : out.junctions) {
    p.x *= sx;
    p.y *= sy;
  }
  out.width = kCanonicalExtent;
  out.height = kCanonicalExtent;
  return out;
}

}  // namespace wfkit
