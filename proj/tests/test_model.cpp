#include <string>

#include "doctest.h"
#include "wfkit/error.hpp"
#include "wfkit/model.hpp"
#include "wfkit/rng.hpp"

using namespace wfkit;

namespace {
bool mentions(const std::vector<Violation>& v, ViolationKind kind, std::size_t index) {
  for (const auto& x : v) {
    if (x.kind == kind && x.index == index) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("empty wireframe is valid") {
  CHECK(validate(Wireframe{}).empty());
}

TEST_CASE("self-loop is reported with its edge index") {
  Wireframe w;
  w.junctions = {{1, 1}};
  w.edges = {Edge(0, 0)};
  const auto v = validate(w);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kSelfLoop);
  CHECK(v[0].message == "self-loop at edge 0");
}

TEST_CASE("out-of-bounds junction is reported") {
  Wireframe w;
  w.junctions = {{1, 1}, {200, 1}};
  const auto v = validate(w);
  REQUIRE(v.size() == 1);
  CHECK(v[0].message == "junction 1 out of bounds");
  // the far edge of the space is excluded
  w.junctions[1] = {128.0, 5.0};
  CHECK(mentions(validate(w), ViolationKind::kJunctionOutOfBounds, 1));
}

TEST_CASE("edge, duplicate and score-length violations") {
  Wireframe w;
  w.junctions = {{1, 1}, {2, 2}, {3, 3}};
  w.edges = {Edge(0, 1), Edge(1, 0), Edge(1, 5)};
  w.line_scores = std::vector<double>{0.5, 0.5};
  w.junction_scores = std::vector<double>{0.1, 1.5, 0.2};
  const auto v = validate(w);
  CHECK(mentions(v, ViolationKind::kDuplicateEdge, 1));
  CHECK(mentions(v, ViolationKind::kEdgeIndexOutOfRange, 2));
  CHECK(mentions(v, ViolationKind::kLineScoreLength, 2));
  CHECK(mentions(v, ViolationKind::kScoreOutOfRange, 1));
}

TEST_CASE("edges are normalized on construction") {
  const Edge e(7, 3);
  CHECK(e.a() == 3);
  CHECK(e.b() == 7);
  CHECK(Edge(3, 7) == e);
}

TEST_CASE("to_scored_lines materializes edges") {
  Wireframe w;
  w.junctions = {{0, 0}, {3, 4}};
  w.edges = {Edge(0, 1)};
  auto lines = to_scored_lines(w);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] == ScoredLine{{0, 0}, {3, 4}, 1.0});

  w.line_scores = std::vector<double>{0.7};
  CHECK(to_scored_lines(w)[0].score == 0.7);

  w.edges.clear();
  w.line_scores.reset();
  CHECK(to_scored_lines(w).empty());
}

TEST_CASE("to_scored_lines rejects invalid wireframes") {
  Wireframe w;
  w.junctions = {{1, 1}};
  w.edges = {Edge(0, 0)};
  CHECK_THROWS_AS(to_scored_lines(w), ValidationError);
}

TEST_CASE("property: cardinality preserved and validate deterministic") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Wireframe w;
    const std::size_t n = 2 + rng.uniform_index(10);
    for (std::size_t i = 0; i < n; ++i) w.junctions.push_back({rng.uniform(0, 128), rng.uniform(0, 128)});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.uniform01() < 0.3) w.edges.emplace_back(i, j);
      }
    }
    REQUIRE(validate(w).empty());
    CHECK(to_scored_lines(w).size() == w.edges.size());
    w.edges.emplace_back(0, 0);
    const auto first = validate(w);
    const auto second = validate(w);
    REQUIRE(first.size() == second.size());
    for (std::size_t k = 0; k < first.size(); ++k) CHECK(first[k].message == second[k].message);
  }
}

TEST_CASE("from_scored_lines shares junctions and drops repeats") {
  const std::vector<ScoredLine> lines{{{0, 0}, {1, 0}, 0.9}, {{1, 0}, {1, 1}, 0.8},
                                      {{1, 0}, {0, 0}, 0.5}, {{2, 2}, {2, 2}, 0.4}};
  const Wireframe w = from_scored_lines(lines, 128, 128);
  CHECK(w.junctions.size() == 3);
  REQUIRE(w.edges.size() == 2);
  CHECK((*w.line_scores)[0] == 0.9);
  CHECK((*w.line_scores)[1] == 0.8);
}

TEST_CASE("to_canonical rescales coordinates") {
  Wireframe w;
  w.width = 512;
  w.height = 256;
  w.junctions = {{256, 128}};
  const Wireframe c = to_canonical(w);
  CHECK(c.width == 128);
  CHECK(c.junctions[0] == Point2{64, 64});
}
