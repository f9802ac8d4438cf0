#include <algorithm>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "wfkit/error.hpp"
#include "wfkit/metrics_structural.hpp"
#include "wfkit/rng.hpp"

using namespace wfkit;

namespace {

std::vector<bool> tp_flags(const std::vector<MatchOutcome>& outcomes) {
  std::vector<bool> out;
  for (const auto& o : outcomes) out.push_back(o.is_tp);
  return out;
}

Point2 random_point(Rng& rng) { return {rng.uniform(0, 128), rng.uniform(0, 128)}; }

// Small instance where predictions are noisy copies of gt lines, so the
// threshold matters.
void random_instance(Rng& rng, std::vector<ScoredLine>& pred, std::vector<Segment>& gt, bool distinct_scores) {
  gt.clear();
  pred.clear();
  const std::size_t n_gt = rng.uniform_index(9);
  const std::size_t n_pred = rng.uniform_index(9);
  for (std::size_t g = 0; g < n_gt; ++g) gt.push_back({random_point(rng), random_point(rng)});
  for (std::size_t p = 0; p < n_pred; ++p) {
    ScoredLine l{random_point(rng), random_point(rng), 0.0};
    if (!gt.empty() && rng.uniform01() < 0.8) {
      const Segment& base = gt[rng.uniform_index(gt.size())];
      const double s = rng.uniform(0, 3);
      l.p1 = {base.p1.x + s * rng.normal(), base.p1.y + s * rng.normal()};
      l.p2 = {base.p2.x + s * rng.normal(), base.p2.y + s * rng.normal()};
      if (rng.uniform01() < 0.5) std::swap(l.p1, l.p2);
    }
    l.score = distinct_scores ? rng.uniform01() : std::floor(rng.uniform01() * 3) / 3;
    pred.push_back(l);
  }
}

}  // namespace

TEST_CASE("structural_distance is orientation free") {
  const Segment a{{0, 0}, {10, 0}};
  CHECK(structural_distance({{1, 0}, {10, 0}}, a) == 1.0);
  CHECK(structural_distance({{10, 0}, {1, 0}}, a) == 1.0);
}

TEST_CASE("match_lines examples") {
  const std::vector<Segment> gt{{{0, 0}, {10, 0}}, {{20, 20}, {40, 60}}};
  std::vector<ScoredLine> pred{{{0, 0}, {10, 0}, 1.0}, {{20, 20}, {40, 60}, 1.0}};
  for (const auto& o : match_lines(pred, gt, 5)) CHECK(o.is_tp);

  const std::vector<Segment> one{{{0, 0}, {10, 0}}};
  auto o = match_lines({{{1, 0}, {10, 0}, 0.9}}, one, 5);
  CHECK(o[0].is_tp);
  CHECK(o[0].matched_gt == std::optional<std::size_t>(0));

  o = match_lines({{{0, 0}, {10, 0}, 0.9}, {{1, 0}, {10, 0}, 0.8}}, one, 5);
  CHECK(o[0].is_tp);
  CHECK(!o[1].is_tp);
  CHECK(!o[1].matched_gt);
}

TEST_CASE("claimed argmin is never replaced by a farther gt line") {
  // Both predictions prefer gt 0; gt 1 is within theta of the second one but
  // is not its argmin.
  const std::vector<Segment> gt{{{0, 0}, {10, 0}}, {{0, 2}, {10, 2}}};
  const auto o = match_lines({{{0, 0}, {10, 0}, 0.9}, {{0, 0.5}, {10, 0.5}, 0.8}}, gt, 10);
  CHECK(o[0].is_tp);
  CHECK(!o[1].is_tp);
}

TEST_CASE("a higher-ranked false positive still claims its argmin") {
  const std::vector<Segment> gt{{{0, 0}, {10, 0}}};
  const auto o = match_lines({{{0, 3}, {10, 3}, 0.9}, {{0, 1}, {10, 1}, 0.8}}, gt, 5);
  CHECK(!o[0].is_tp);  // D = 18
  CHECK(!o[1].is_tp);  // D = 2, but gt 0 is the argmin of a line ranked above
}

TEST_CASE("edge cases") {
  CHECK(match_lines({}, {{{0, 0}, {1, 1}}}, 5).empty());
  const auto o = match_lines({{{0, 0}, {1, 1}, 0.5}}, {}, 5);
  CHECK(!o[0].is_tp);
  CHECK_THROWS_AS(match_lines({}, {}, 0.0), ValidationError);
}

TEST_CASE("structural_ap examples") {
  PerImage<Segment> gt{{"a", {{{0, 0}, {10, 0}}, {{0, 20}, {10, 20}}}}, {"b", {{{5, 5}, {50, 50}}}}};
  PerImage<ScoredLine> same;
  for (const auto& [id, segs] : gt)
    for (const auto& s : segs) same[id].push_back({s.p1, s.p2, 1.0});
  for (double theta : {5.0, 10.0, 15.0}) CHECK(structural_ap(same, gt, theta).ap == 1.0);

  PerImage<ScoredLine> far{{"a", {{{100, 100}, {120, 100}, 0.9}}}, {"b", {}}};
  CHECK(structural_ap(far, gt, 10).ap == 0.0);

  PerImage<Segment> two{{"x", {{{0, 0}, {10, 0}}, {{0, 50}, {10, 50}}}}};
  PerImage<ScoredLine> half{{"x", {{{0, 0}, {10, 0}, 0.9}, {{90, 90}, {100, 100}, 0.8}}}};
  const PRCurve c = structural_ap(half, two, 10);
  REQUIRE(c.points.size() == 2);
  CHECK(c.points[0].precision == 1.0);
  CHECK(c.points[0].recall == 0.5);
  CHECK(c.points[1].precision == 0.5);
  CHECK(c.points[1].recall == 0.5);
  CHECK(c.ap == 0.5);
}

TEST_CASE("structural_ap errors") {
  PerImage<Segment> gt{{"a", {}}};
  PerImage<ScoredLine> pred{{"a", {}}};
  CHECK_THROWS_AS(structural_ap(pred, gt, 10), ValidationError);
  PerImage<ScoredLine> other{{"b", {}}};
  CHECK_THROWS_AS(structural_ap(other, PerImage<Segment>{{"a", {{{0, 0}, {1, 1}}}}}, 10), ValidationError);
}

TEST_CASE("property: match_lines equals the literal rule replay") {
  Rng rng(17);
  std::vector<ScoredLine> pred;
  std::vector<Segment> gt;
  for (int trial = 0; trial < 500; ++trial) {
    random_instance(rng, pred, gt, trial % 2 == 0);
    for (double theta : {5.0, 10.0, 15.0}) {
      const auto outcomes = match_lines(pred, gt, theta);
      const auto replay = oracle::replay_structural(pred, gt, theta);
      CHECK(tp_flags(outcomes) == replay.is_tp);
    }
  }
}

TEST_CASE("property: endpoint order, theta monotonicity, claim uniqueness") {
  Rng rng(23);
  std::vector<ScoredLine> pred;
  std::vector<Segment> gt;
  for (int trial = 0; trial < 300; ++trial) {
    random_instance(rng, pred, gt, true);
    const auto base = match_lines(pred, gt, 10);

    auto flipped_pred = pred;
    for (auto& l : flipped_pred)
      if (rng.uniform01() < 0.5) std::swap(l.p1, l.p2);
    auto flipped_gt = gt;
    for (auto& s : flipped_gt)
      if (rng.uniform01() < 0.5) std::swap(s.p1, s.p2);
    CHECK(tp_flags(match_lines(flipped_pred, flipped_gt, 10)) == tp_flags(base));

    // With distinct scores the claim order is fixed, so TP(5) is a subset of TP(10).
    const auto tight = match_lines(pred, gt, 5);
    for (std::size_t k = 0; k < pred.size(); ++k)
      if (tight[k].is_tp) CHECK(base[k].is_tp);

    std::vector<std::size_t> claimed;
    for (const auto& o : base)
      if (o.is_tp) claimed.push_back(*o.matched_gt);
    std::sort(claimed.begin(), claimed.end());
    CHECK(std::adjacent_find(claimed.begin(), claimed.end()) == claimed.end());

    // Shuffling inputs with distinct scores does not change TP/FP counts.
    std::vector<ScoredLine> shuffled = pred;
    for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
    const auto a = tp_flags(base), b = tp_flags(match_lines(shuffled, gt, 10));
    CHECK(std::count(a.begin(), a.end(), true) == std::count(b.begin(), b.end(), true));

    if (!gt.empty()) {
      const PRCurve c = structural_ap({{"i", pred}}, {{"i", gt}}, 10);
      CHECK(c.ap >= 0.0);
      CHECK(c.ap <= 1.0);
      if (!c.points.empty()) {
        CHECK(c.points.back().recall == doctest::Approx(std::count(a.begin(), a.end(), true) / double(gt.size())));
      }
      for (std::size_t k = 1; k < c.points.size(); ++k) CHECK(c.points[k].recall >= c.points[k - 1].recall);
    }
  }
}

TEST_CASE("junction matching") {
  SUBCASE("identity") {
    PerImage<Point2> gt{{"a", {{1, 1}, {20, 30}}}};
    PerImage<ScoredJunction> pred{{"a", {{{1, 1}, 1.0}, {{20, 30}, 1.0}}}};
    const auto r = junction_map(pred, gt);
    CHECK(r.mean_ap == 1.0);
    CHECK(r.curves.size() == 3);
  }
  SUBCASE("double prediction is a false positive at every threshold") {
    const std::vector<Point2> gt{{10, 10}};
    for (double tau : {0.5, 1.0, 2.0}) {
      const auto o = match_junctions_one_shot({{{10, 10}, 0.9}, {{10, 10}, 0.8}}, gt, tau);
      CHECK(o[0].is_tp);
      CHECK(!o[1].is_tp);
    }
  }
  SUBCASE("0.4 offset is within every default threshold") {
    PerImage<Point2> gt{{"a", {{10, 10}}}};
    PerImage<ScoredJunction> pred{{"a", {{{10.4, 10}, 0.9}}}};
    CHECK(junction_map(pred, gt).mean_ap == 1.0);
  }
  SUBCASE("second prediction falls back to the next unclaimed junction") {
    const std::vector<Point2> gt{{10, 10}, {11, 10}};
    const auto o = match_junctions_one_shot({{{10.1, 10}, 0.9}, {{10.2, 10}, 0.8}}, gt, 1.0);
    CHECK(o[0].matched_gt == std::optional<std::size_t>(0));
    CHECK(o[1].matched_gt == std::optional<std::size_t>(1));
  }
  SUBCASE("thresholds change the result") {
    PerImage<Point2> gt{{"a", {{10, 10}}}};
    PerImage<ScoredJunction> pred{{"a", {{{11.5, 10}, 0.9}}}};
    const auto r = junction_map(pred, gt);
    CHECK(r.curves[0].ap == 0.0);
    CHECK(r.curves[1].ap == 0.0);
    CHECK(r.curves[2].ap == 1.0);
    CHECK(r.mean_ap == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("no gt junctions is an error") {
    CHECK_THROWS_AS(junction_map(PerImage<ScoredJunction>{{"a", {}}}, PerImage<Point2>{{"a", {}}}), ValidationError);
  }
}

TEST_CASE("average precision uses the precision envelope") {
  // TP, FP, TP over 2 gt: precision 1, .5, .667; recall .5, .5, 1
  const auto c = pr_from_ranked({0.9, 0.8, 0.7}, {true, false, true}, 2);
  CHECK(c.ap == doctest::Approx(0.5 * 1.0 + 0.5 * (2.0 / 3.0)));
  CHECK(c.ap == doctest::Approx(oracle::ap_bruteforce({0.9, 0.8, 0.7}, {true, false, true}, 2)));
}

TEST_CASE("threaded evaluation matches serial") {
  Rng rng(4);
  PerImage<ScoredLine> pred;
  PerImage<Segment> gt;
  for (int i = 0; i < 20; ++i) {
    std::vector<ScoredLine> p;
    std::vector<Segment> g;
    random_instance(rng, p, g, true);
    g.push_back({{1, 1}, {2, 2}});
    const std::string id = "img" + std::to_string(i);
    pred[id] = p;
    gt[id] = g;
  }
  const auto serial = structural_ap(pred, gt, 10, 1);
  const auto threaded = structural_ap(pred, gt, 10, 4);
  CHECK(serial.ap == threaded.ap);
  CHECK(serial.points.size() == threaded.points.size());
}
