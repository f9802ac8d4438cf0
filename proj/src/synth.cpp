#include "wfkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "wfkit/error.hpp"
#include "wfkit/rng.hpp"

namespace wfkit {

namespace {

constexpr double kMargin = 2.0;
constexpr int kMaxAttempts = 200;

// Fisher-Yates on [0, n) using Rng::uniform_index, first k kept, sorted.
std::vector<std::size_t> choose_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k && i < n; ++i) {
    std::swap(idx[i], idx[i + rng.uniform_index(n - i)]);
  }
  idx.resize(std::min(k, n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Wireframe grid_scene(const SceneSpec& spec, Rng& rng) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(spec.n_junctions))));
  if (side < 2 || side * side != spec.n_junctions) {
    throw ValidationError("grid layout needs a square junction count >= 4");
  }
  const std::size_t all_edges = 2 * side * (side - 1);
  if (spec.n_lines > all_edges) throw ValidationError("grid layout has only " + std::to_string(all_edges) + " lines");
  const double span = kCanonicalExtent - 2.0 * kMargin;
  const double max_spacing = span / static_cast<double>(side - 1);
  if (spec.min_length > max_spacing) throw ValidationError("grid spacing cannot reach min_length");

  const double spacing = rng.uniform(spec.min_length, max_spacing);
  const double free = span - spacing * static_cast<double>(side - 1);
  const double x0 = kMargin + rng.uniform(0.0, free);
  const double y0 = kMargin + rng.uniform(0.0, free);

  Wireframe w;
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      w.junctions.push_back({x0 + spacing * static_cast<double>(c), y0 + spacing * static_cast<double>(r)});
    }
  }
  std::vector<Edge> lattice;
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c + 1 < side; ++c) lattice.emplace_back(r * side + c, r * side + c + 1);
  }
  for (std::size_t r = 0; r + 1 < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) lattice.emplace_back(r * side + c, (r + 1) * side + c);
  }
  for (std::size_t k : choose_subset(lattice.size(), spec.n_lines, rng)) w.edges.push_back(lattice[k]);
  return w;
}

struct Box {
  double x0, y0, x1, y1;
};

Wireframe boxes_scene(const SceneSpec& spec, Rng& rng) {
  if (spec.n_junctions == 0 || spec.n_junctions % 4 != 0) {
    throw ValidationError("boxes layout needs a positive multiple of 4 junctions");
  }
  const std::size_t n_boxes = spec.n_junctions / 4;
  if (spec.n_lines > 4 * n_boxes) throw ValidationError("boxes layout has only 4 lines per box");
  const double lo = kMargin;
  const double hi = kCanonicalExtent - kMargin;
  const double max_side = std::max(spec.min_length, 3.0 * spec.min_length);
  if (spec.min_length > hi - lo) throw ValidationError("boxes cannot reach min_length");

  std::vector<Box> boxes;
  const double gap = spec.min_length;
  for (std::size_t b = 0; b < n_boxes; ++b) {
    bool placed = false;
    for (int attempt = 0; attempt < 50 * kMaxAttempts && !placed; ++attempt) {
      const double w = rng.uniform(spec.min_length, std::min(max_side, hi - lo));
      const double h = rng.uniform(spec.min_length, std::min(max_side, hi - lo));
      const double x0 = rng.uniform(lo, hi - w);
      const double y0 = rng.uniform(lo, hi - h);
      const Box cand{x0, y0, x0 + w, y0 + h};
      const bool clear = std::all_of(boxes.begin(), boxes.end(), [&](const Box& o) {
        return cand.x1 + gap <= o.x0 || o.x1 + gap <= cand.x0 || cand.y1 + gap <= o.y0 ||
               o.y1 + gap <= cand.y0;
      });
      if (clear) {
        boxes.push_back(cand);
        placed = true;
      }
    }
    if (!placed) throw ValidationError("could not place " + std::to_string(n_boxes) + " boxes");
  }

  Wireframe w;
  std::vector<Edge> sides;
  for (const Box& b : boxes) {
    const std::size_t base = w.junctions.size();
    w.junctions.push_back({b.x0, b.y0});
    w.junctions.push_back({b.x1, b.y0});
    w.junctions.push_back({b.x1, b.y1});
    w.junctions.push_back({b.x0, b.y1});
    for (std::size_t k = 0; k < 4; ++k) sides.emplace_back(base + k, base + (k + 1) % 4);
  }
  for (std::size_t k : choose_subset(sides.size(), spec.n_lines, rng)) w.edges.push_back(sides[k]);
  return w;
}

Wireframe random_scene(const SceneSpec& spec, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Wireframe w;
    for (std::size_t i = 0; i < spec.n_junctions; ++i) {
      w.junctions.push_back({rng.uniform(kMargin, kCanonicalExtent - kMargin),
                             rng.uniform(kMargin, kCanonicalExtent - kMargin)});
    }
    std::vector<Edge> candidates;
    for (std::size_t i = 0; i < spec.n_junctions; ++i) {
      for (std::size_t j = i + 1; j < spec.n_junctions; ++j) {
        if (distance(w.junctions[i], w.junctions[j]) >= spec.min_length) candidates.emplace_back(i, j);
      }
    }
    if (candidates.size() < spec.n_lines) continue;
    for (std::size_t k : choose_subset(candidates.size(), spec.n_lines, rng)) w.edges.push_back(candidates[k]);
    return w;
  }
  throw ValidationError("random layout: not enough junction pairs reach min_length");
}

}  // namespace

Layout parse_layout(const std::string& name) {
  if (name == "grid") return Layout::kGrid;
  if (name == "boxes") return Layout::kBoxes;
  if (name == "random") return Layout::kRandom;
  throw ValidationError("unknown layout '" + name + "'");
}

const char* to_string(Layout layout) {
  switch (layout) {
    case Layout::kGrid: return "grid";
    case Layout::kBoxes: return "boxes";
    case Layout::kRandom: return "random";
  }
  return "?";
}

void SceneSpec::check() const {
  if (!(min_length > 0.0)) throw ValidationError("min_length must be positive");
  const std::size_t max_lines = n_junctions < 2 ? 0 : n_junctions * (n_junctions - 1) / 2;
  if (n_lines > max_lines) throw ValidationError("n_lines exceeds the number of junction pairs");
}

Wireframe gen_scene(const SceneSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  switch (spec.layout) {
    case Layout::kGrid: return grid_scene(spec, rng);
    case Layout::kBoxes: return boxes_scene(spec, rng);
    case Layout::kRandom: return random_scene(spec, rng);
  }
  throw ValidationError("unknown layout");
}

DegradeMode parse_degrade_mode(const std::string& name) {
  if (name == "split_midpoint") return DegradeMode::kSplitMidpoint;
  if (name == "duplicate") return DegradeMode::kDuplicate;
  if (name == "jitter") return DegradeMode::kJitter;
  if (name == "drop") return DegradeMode::kDrop;
  throw ValidationError("unknown degrade mode '" + name + "'");
}

const char* to_string(DegradeMode mode) {
  switch (mode) {
    case DegradeMode::kSplitMidpoint: return "split_midpoint";
    case DegradeMode::kDuplicate: return "duplicate";
    case DegradeMode::kJitter: return "jitter";
    case DegradeMode::kDrop: return "drop";
  }
  return "?";
}

void DegradeSpec::check() const {
  if (!(param >= 0.0) || !std::isfinite(param)) throw ValidationError("degrade param must be >= 0");
  if ((mode == DegradeMode::kDuplicate || mode == DegradeMode::kDrop) && param > 1.0) {
    throw ValidationError("degrade fraction must be <= 1");
  }
}

Wireframe degrade(const Wireframe& w, const DegradeSpec& spec, std::uint64_t seed) {
  require_valid(w);
  spec.check();
  Rng rng(seed);
  const std::size_t n_edges = w.edges.size();
  const std::vector<double> scores = w.line_scores ? *w.line_scores : std::vector<double>(n_edges, 1.0);
  const auto fraction_count = [&] {
    return static_cast<std::size_t>(std::llround(spec.param * static_cast<double>(n_edges)));
  };

  Wireframe out = w;
  out.line_scores = scores;
  switch (spec.mode) {
    case DegradeMode::kSplitMidpoint: {
      out.edges.clear();
      out.line_scores->clear();
      for (std::size_t k = 0; k < n_edges; ++k) {
        const Edge& e = w.edges[k];
        const Point2 mid = 0.5 * (w.junctions[e.a()] + w.junctions[e.b()]);
        const std::size_t m = out.junctions.size();
        out.junctions.push_back(mid);
        if (out.junction_scores) {
          out.junction_scores->push_back(
              std::min((*w.junction_scores)[e.a()], (*w.junction_scores)[e.b()]));
        }
        out.edges.emplace_back(e.a(), m);
        out.edges.emplace_back(m, e.b());
        out.line_scores->push_back(scores[k]);
        out.line_scores->push_back(scores[k]);
      }
      break;
    }
    case DegradeMode::kDuplicate: {
      for (std::size_t k : choose_subset(n_edges, fraction_count(), rng)) {
        const Edge& e = w.edges[k];
        const std::size_t base = out.junctions.size();
        out.junctions.push_back(w.junctions[e.a()]);
        out.junctions.push_back(w.junctions[e.b()]);
        if (out.junction_scores) {
          out.junction_scores->push_back((*w.junction_scores)[e.a()]);
          out.junction_scores->push_back((*w.junction_scores)[e.b()]);
        }
        out.edges.emplace_back(base, base + 1);
        out.line_scores->push_back(0.9 * scores[k]);
      }
      break;
    }
    case DegradeMode::kJitter: {
      const double max_x = std::nextafter(w.width, 0.0);
      const double max_y = std::nextafter(w.height, 0.0);
      for (Point2& p : out.junctions) {
        const double nx = rng.normal();
        const double ny = rng.normal();
        p.x = std::clamp(p.x + spec.param * nx, 0.0, max_x);
        p.y = std::clamp(p.y + spec.param * ny, 0.0, max_y);
      }
      break;
    }
    case DegradeMode::kDrop: {
      const auto dropped = choose_subset(n_edges, fraction_count(), rng);
      out.edges.clear();
      out.line_scores->clear();
      for (std::size_t k = 0; k < n_edges; ++k) {
        if (std::binary_search(dropped.begin(), dropped.end(), k)) continue;
        out.edges.push_back(w.edges[k]);
        out.line_scores->push_back(scores[k]);
      }
      break;
    }
  }
  return out;
}

}  // namespace wfkit
