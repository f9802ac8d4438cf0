#pragma once

#include <cstdint>
#include <string>

#include "wfkit/model.hpp"

namespace wfkit {

enum class Layout { kGrid, kBoxes, kRandom };

Layout parse_layout(const std::string& name);
const char* to_string(Layout layout);

struct SceneSpec {
  std::uint64_t seed = 0;
  std::size_t n_junctions = 16;
  std::size_t n_lines = 24;
  double min_length = 16.0;
  Layout layout = Layout::kGrid;

  void check() const;
};

// Deterministic scene in the canonical 128 x 128 space.
//   grid:   n_junctions must be a square s*s; junctions on an axis-aligned
//           lattice with spacing >= min_length; lines are lattice-adjacent
//           pairs (all 2s(s-1) of them, or a seeded subset).
//   boxes:  n_junctions / 4 axis-aligned rectangles with sides >= min_length,
//           kept at least min_length apart; lines are rectangle sides.
//   random: uniform junctions, lines drawn among pairs at least min_length
//           long.
// In grid and boxes layouts every line midpoint is at least min_length / 2
// from every junction. Throws ValidationError when the requested scene is infeasible.
Wireframe gen_scene(const SceneSpec& spec);

enum class DegradeMode { kSplitMidpoint, kDuplicate, kJitter, kDrop };

DegradeMode parse_degrade_mode(const std::string& name);
const char* to_string(DegradeMode mode);

struct DegradeSpec {
  DegradeMode mode = DegradeMode::kSplitMidpoint;
  double param = 0.0;  // jitter sigma (grid units) or line fraction

  void check() const;
};

// Turns a ground-truth wireframe into a scored prediction exhibiting one
// failure mode. The output always carries line scores.
//   split_midpoint: every line (u, v) becomes (u, m), (m, v) at its midpoint
//   duplicate:      a fraction of lines re-emitted on copied junctions with
//                   0.9 x the original score
//   jitter:         junction coordinates perturbed by N(0, sigma^2) noise
//   drop:           a fraction of lines removed
Wireframe degrade(const Wireframe& w, const DegradeSpec& spec, std::uint64_t seed);

}  // namespace wfkit
