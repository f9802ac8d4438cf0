#include "wfkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include "wfkit/error.hpp"

namespace wfkit {

namespace {

constexpr char kMagic[4] = {'W', 'F', 'T', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFFu));
}

std::uint32_t get_u32(const std::string& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + k])) << (8 * k);
  return v;
}

std::uint32_t checked_dim(std::size_t d) {
  if (d > std::numeric_limits<std::uint32_t>::max()) throw ValidationError("tensor dimension exceeds 32 bits");
  return static_cast<std::uint32_t>(d);
}

void put_values(std::string& out, std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("refusing to write a non-finite tensor value");
    const auto f = static_cast<float>(v);
    std::uint32_t bits = 0;
    std::memcpy(&bits, &f, sizeof bits);
    put_u32(out, bits);
  }
}

}  // namespace

std::string encode_tensor(const Tensor& tensor) {
  std::string out(kMagic, 4);
  if (const auto* g = std::get_if<Grid2D>(&tensor)) {
    put_u32(out, 2);
    put_u32(out, checked_dim(g->rows()));
    put_u32(out, checked_dim(g->cols()));
    put_values(out, g->values());
  } else {
    const auto& g3 = std::get<Grid3D>(tensor);
    put_u32(out, 3);
    put_u32(out, checked_dim(g3.channels()));
    put_u32(out, checked_dim(g3.rows()));
    put_u32(out, checked_dim(g3.cols()));
    put_values(out, g3.values());
  }
  return out;
}

Tensor decode_tensor(const std::string& bytes) {
  if (bytes.size() < 8) throw IoError("tensor file truncated in header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw IoError("bad magic");
  const std::uint32_t ndim = get_u32(bytes, 4);
  if (ndim != 2 && ndim != 3) throw IoError("unsupported tensor rank " + std::to_string(ndim));
  const std::size_t header = 8 + 4 * static_cast<std::size_t>(ndim);
  if (bytes.size() < header) throw IoError("tensor file truncated in dims");
  std::vector<std::size_t> dims;
  std::uint64_t count = 1;
  for (std::uint32_t k = 0; k < ndim; ++k) {
    const std::uint32_t d = get_u32(bytes, 8 + 4 * k);
    if (d != 0 && count > std::numeric_limits<std::uint64_t>::max() / 4 / d) throw IoError("tensor dims overflow");
    count *= d;
    dims.push_back(d);
  }
  const std::uint64_t payload = bytes.size() - header;
  if (payload < 4 * count) throw IoError("truncated payload");
  if (payload > 4 * count) throw IoError("trailing bytes after payload");

  std::vector<double> values(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t bits = get_u32(bytes, header + 4 * i);
    float f = 0.0f;
    std::memcpy(&f, &bits, sizeof f);
    if (!std::isfinite(f)) throw IoError("non-finite value in tensor payload");
    values[i] = f;
  }
  if (ndim == 2) {
    Grid2D g(dims[0], dims[1]);
    std::copy(values.begin(), values.end(), g.values().begin());
    return g;
  }
  Grid3D g(dims[0], dims[1], dims[2]);
  std::copy(values.begin(), values.end(), g.values().begin());
  return g;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return bytes;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

Tensor read_tensor(const std::filesystem::path& path) { return decode_tensor(read_file(path)); }

void write_tensor(const Tensor& tensor, const std::filesystem::path& path) {
  write_file(path, encode_tensor(tensor));
}

nlohmann::json wireframe_to_json(const Wireframe& w) {
  nlohmann::json j;
  j["coord_space"] = {w.width, w.height};
  j["junctions"] = nlohmann::json::array();
  for (const Point2& p : w.junctions) j["junctions"].push_back({p.x, p.y});
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : w.edges) j["edges"].push_back({e.a(), e.b()});
  if (w.junction_scores) j["junction_scores"] = *w.junction_scores;
  if (w.line_scores) j["line_scores"] = *w.line_scores;
  return j;
}

namespace {

double number(const nlohmann::json& v, const char* what) {
  if (!v.is_number()) throw ValidationError(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const nlohmann::json& v, const char* what) {
  if (!v.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, what));
  return out;
}

}  // namespace

Wireframe wireframe_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("wireframe JSON must be an object");
  static const std::set<std::string> known{"coord_space", "junctions", "edges", "junction_scores",
                                           "line_scores"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ValidationError("unknown wireframe field '" + key + "'");
  }
  Wireframe w;
  if (j.contains("coord_space")) {
    const auto cs = number_list(j["coord_space"], "coord_space");
    if (cs.size() != 2) throw ValidationError("coord_space must have two entries");
    w.width = cs[0];
    w.height = cs[1];
  }
  if (!j.contains("junctions")) throw ValidationError("wireframe JSON lacks 'junctions'");
  if (!j["junctions"].is_array()) throw ValidationError("junctions must be an array");
  for (const auto& p : j["junctions"]) {
    const auto xy = number_list(p, "junction");
    if (xy.size() != 2) throw ValidationError("junction must be [x, y]");
    w.junctions.push_back({xy[0], xy[1]});
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ValidationError("edges must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
        throw ValidationError("edge must be [i, j] with non-negative integers");
      }
      w.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  }
  if (j.contains("junction_scores")) w.junction_scores = number_list(j["junction_scores"], "junction_scores");
  if (j.contains("line_scores")) w.line_scores = number_list(j["line_scores"], "line_scores");
  return w;
}

Wireframe read_wireframe(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse '" + path.string() + "': " + e.what());
  }
  return wireframe_from_json(j);
}

void write_wireframe(const Wireframe& w, const std::filesystem::path& path) {
  write_file(path, wireframe_to_json(w).dump() + "\n");
}

namespace {
std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
}  // namespace

std::string format_pr_csv(const std::vector<LabeledCurve>& curves) {
  std::ostringstream out;
  out << "label,threshold,precision,recall\n";
  for (const LabeledCurve& c : curves) {
    for (const PRPoint& p : c.curve.points) {
      out << c.label << ',' << g6(p.threshold) << ',' << g6(p.precision) << ',' << g6(p.recall) << '\n';
    }
    out << "# " << c.label << " AP=" << g6(c.curve.ap) << '\n';
  }
  return out.str();
}

void write_pr_csv(const std::vector<LabeledCurve>& curves, const std::filesystem::path& path) {
  write_file(path, format_pr_csv(curves));
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace wfkit
