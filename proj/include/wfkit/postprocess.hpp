#pragma once

#include <cmath>
#include <vector>

#include "wfkit/model.hpp"

namespace wfkit {

struct OverlapConfig {
  // Closeness threshold, as a fraction of the coordinate-space diagonal.
  double eta_s = 0.01;
  double diagonal = std::hypot(kCanonicalExtent, kCanonicalExtent);

  void check() const;
};

// Euclidean distance from p to the closed segment (to the single point when
// the segment is degenerate).
double point_segment_distance(Point2 p, const Segment& seg);

// min(max(d(b.p1, a), d(b.p2, a)), max(d(a.p1, b), d(a.p2, b))) / diagonal.
double closeness(const Segment& a, const Segment& b, double diagonal);

bool lines_close(const Segment& a, const Segment& b, const OverlapConfig& cfg);

// Position of p projected on the infinite line through seg, as a fraction of
// seg (0 at seg.p1, 1 at seg.p2).
double projection_parameter(Point2 p, const Segment& seg);

// Overlap removal. Lines are visited by descending score (input order on
// ties); a lower-ranked line close to a higher-ranked one is deleted when both
// of its endpoints project inside the higher-ranked line, and shortened to
// that line's extent when exactly one does. Cut lines keep competing with
// their new geometry. Passes repeat until nothing changes, so the result is a
// fixed point. Survivors keep their scores and input order.
std::vector<ScoredLine> resolve_overlaps(const std::vector<ScoredLine>& lines,
                                         const OverlapConfig& cfg);

// True iff `line`, ranked below `above`, would be deleted by it.
bool overlap_violation(const Segment& above, const Segment& line, const OverlapConfig& cfg);

}  // namespace wfkit
