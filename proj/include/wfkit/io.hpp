#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wfkit/grid.hpp"
#include "wfkit/model.hpp"
#include "wfkit/pr_curve.hpp"

namespace wfkit {

// Tensor file layout (all little-endian):
//   "WFT1" | u32 ndim | ndim x u32 dims | prod(dims) x f32, row-major
// Only 2-D and 3-D tensors are supported.
using Tensor = std::variant<Grid2D, Grid3D>;

std::string encode_tensor(const Tensor& tensor);
Tensor decode_tensor(const std::string& bytes);

Tensor read_tensor(const std::filesystem::path& path);
void write_tensor(const Tensor& tensor, const std::filesystem::path& path);

// Wireframe JSON:
//   {"coord_space": [w, h], "junctions": [[x, y], ...], "edges": [[i, j], ...],
//    "junction_scores": [...], "line_scores": [...]}
// coord_space defaults to [128, 128]; the score lists are optional. Unknown
// fields are rejected. Parsing does not check graph invariants; see validate().
nlohmann::json wireframe_to_json(const Wireframe& w);
Wireframe wireframe_from_json(const nlohmann::json& j);

Wireframe read_wireframe(const std::filesystem::path& path);
void write_wireframe(const Wireframe& w, const std::filesystem::path& path);

struct LabeledCurve {
  std::string label;
  PRCurve curve;
};

// "label,threshold,precision,recall" header, one row per point, and a
// "# <label> AP=<ap>" line after each curve. Numbers use 6 significant digits.
std::string format_pr_csv(const std::vector<LabeledCurve>& curves);
void write_pr_csv(const std::vector<LabeledCurve>& curves, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

// 64-bit FNV-1a of a byte string, for run reports.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace wfkit
