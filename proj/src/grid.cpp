#include "wfkit/grid.hpp"

#include <algorithm>
#include <cmath>

namespace wfkit {

namespace {
bool finite_span(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}
}  // namespace

bool Grid2D::all_finite() const { return finite_span(values()); }
bool Grid3D::all_finite() const { return finite_span(values()); }

}  // namespace wfkit
