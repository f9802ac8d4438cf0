#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wfkit {

// Width/height of the canonical evaluation lattice. All metrics are defined
// in this coordinate space.
inline constexpr double kCanonicalExtent = 128.0;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

double dot(Point2 a, Point2 b);
double squared_norm(Point2 p);
double distance(Point2 a, Point2 b);
bool is_finite(Point2 p);

// An unscored, undirected segment (ground-truth line).
struct Segment {
  Point2 p1;
  Point2 p2;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ScoredLine {
  Point2 p1;
  Point2 p2;
  double score = 1.0;

  Segment segment() const { return {p1, p2}; }
  friend bool operator==(const ScoredLine&, const ScoredLine&) = default;
};

// Undirected junction pair, normalized so that a < b on construction.
class Edge {
 public:
  Edge() = default;
  Edge(std::size_t i, std::size_t j) : a_(i < j ? i : j), b_(i < j ? j : i) {}

  std::size_t a() const { return a_; }
  std::size_t b() const { return b_; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;

 private:
  std::size_t a_ = 0;
  std::size_t b_ = 0;
};

// The wireframe graph: junction coordinates plus undirected edges between
// them, in a width x height coordinate space.
struct Wireframe {
  double width = kCanonicalExtent;
  double height = kCanonicalExtent;
  std::vector<Point2> junctions;
  std::vector<Edge> edges;
  std::optional<std::vector<double>> junction_scores;
  std::optional<std::vector<double>> line_scores;

  double diagonal() const;
};

enum class ViolationKind {
  kBadExtent,
  kNonFiniteJunction,
  kJunctionOutOfBounds,
  kEdgeIndexOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kJunctionScoreLength,
  kLineScoreLength,
  kScoreOutOfRange,
};

struct Violation {
  ViolationKind kind;
  std::size_t index = 0;
  std::string message;
};

// Checks every wireframe invariant. Never throws; an empty result means the
// wireframe is valid.
std::vector<Violation> validate(const Wireframe& w);

// Throws ValidationError carrying the first violation, if any.
void require_valid(const Wireframe& w);

// Edge k becomes (junctions[a], junctions[b]) scored by line_scores[k], or
// 1.0 when the wireframe is unscored.
std::vector<ScoredLine> to_scored_lines(const Wireframe& w);
std::vector<Segment> to_segments(const Wireframe& w);

// Builds a wireframe whose junctions are the distinct endpoints of `lines`
// (exact coordinate equality) in first-seen order. Degenerate lines and
// repeated junction pairs are dropped, keeping the first occurrence.
Wireframe from_scored_lines(const std::vector<ScoredLine>& lines, double width,
                            double height);

// Rescales coordinates into the canonical 128 x 128 space.
Wireframe to_canonical(const Wireframe& w);

}  // namespace wfkit
