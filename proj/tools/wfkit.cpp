// wfkit command-line front end. Every subcommand reads explicit inputs, writes
// deterministic outputs and optionally a JSON run report.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wfkit/error.hpp"
#include "wfkit/io.hpp"
#include "wfkit/junction_codec.hpp"
#include "wfkit/loi_pool.hpp"
#include "wfkit/metrics_heatmap.hpp"
#include "wfkit/metrics_structural.hpp"
#include "wfkit/postprocess.hpp"
#include "wfkit/sampler.hpp"
#include "wfkit/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wfkit;

namespace {

// Dynamic sampling draws from its own stream so adding static samples never
// shifts the dynamic ones.
constexpr std::uint64_t kDynamicSeedOffset = 0x9E3779B97F4A7C15ull;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Report {
  std::string command;
  json inputs = json::array();
  json config = json::object();
  json metrics = json::object();

  void add_input(const fs::path& path, const std::string& bytes) {
    inputs.push_back({{"path", path.string()}, {"fnv1a64", hex64(fnv1a64(bytes))}});
  }
};

Wireframe load_wireframe(const fs::path& path, Report& report) {
  const std::string bytes = read_file(path);
  report.add_input(path, bytes);
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw IoError("cannot parse '" + path.string() + "': " + e.what());
  }
  Wireframe w = wireframe_from_json(j);
  require_valid(w);
  return w;
}

Tensor load_tensor(const fs::path& path, Report& report) {
  const std::string bytes = read_file(path);
  report.add_input(path, bytes);
  return decode_tensor(bytes);
}

// Same-named <image_id>.json files in both directories, ids sorted.
std::vector<std::string> paired_ids(const fs::path& gt_dir, const fs::path& pred_dir) {
  const auto ids_in = [](const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("'" + dir.string() + "' is not a directory");
    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  const auto gt = ids_in(gt_dir);
  const auto pred = ids_in(pred_dir);
  std::vector<std::string> only;
  std::set_symmetric_difference(gt.begin(), gt.end(), pred.begin(), pred.end(), std::back_inserter(only));
  if (!only.empty()) {
    throw ValidationError("image '" + only.front() + "' is present in only one of '" + gt_dir.string() + "' and '" +
                          pred_dir.string() + "'");
  }
  if (gt.empty()) throw ValidationError("no .json files in '" + gt_dir.string() + "'");
  return gt;
}

struct Dataset {
  std::vector<std::string> ids;
  std::vector<Wireframe> gt;    // canonical space
  std::vector<Wireframe> pred;  // canonical space
};

Dataset load_dataset(const fs::path& gt_dir, const fs::path& pred_dir, Report& report) {
  Dataset d;
  d.ids = paired_ids(gt_dir, pred_dir);
  for (const auto& id : d.ids) {
    d.gt.push_back(to_canonical(load_wireframe(gt_dir / (id + ".json"), report)));
    d.pred.push_back(to_canonical(load_wireframe(pred_dir / (id + ".json"), report)));
  }
  return d;
}

std::vector<double> junction_scores_or_one(const Wireframe& w) {
  return w.junction_scores ? *w.junction_scores : std::vector<double>(w.junctions.size(), 1.0);
}

std::vector<ScoredJunction> scored_junctions(const Wireframe& w) {
  const auto scores = junction_scores_or_one(w);
  std::vector<ScoredJunction> out;
  for (std::size_t i = 0; i < w.junctions.size(); ++i) out.push_back({w.junctions[i], scores[i]});
  return out;
}

// Writes the PR CSV when requested and echoes the summary lines to stdout.
void emit_curves(const std::vector<LabeledCurve>& curves, const fs::path& pr_out, const std::string& extra) {
  if (!pr_out.empty()) write_file(pr_out, format_pr_csv(curves) + extra);
  for (const auto& c : curves) std::printf("%s %s\n", c.label.c_str(), fmt(c.curve.ap).c_str());
}

std::string label_with(const std::string& prefix, double v) { return prefix + fmt(v); }

struct Options {
  std::size_t threads = 1;

  // encode / decode
  fs::path in, out;
  std::size_t bins = 128;
  std::size_t k = 300;
  std::vector<double> coord_space{kCanonicalExtent, kCanonicalExtent};

  // sample
  fs::path gt_path, pred_path;
  std::uint64_t seed = 0;
  SamplerConfig sampler;

  // loipool
  fs::path fm;
  std::vector<double> line;
  LoiConfig loi;

  // eval
  fs::path gt_dir, pred_dir;
  fs::path pr_out;  // empty: no CSV
  std::vector<double> theta{5, 10, 15};
  std::vector<double> tau = kDefaultJunctionThresholds;
  HeatmapEvalConfig heatmap;
  double tolerance = 0.0;

  // postprocess
  OverlapConfig overlap;

  // synth / degrade
  SceneSpec scene;
  std::string layout = "grid";
  std::string mode;
  double param = 0.0;
};

int run_encode(Options& o, Report& r) {
  const Wireframe w = load_wireframe(o.in, r);
  r.config["bins"] = o.bins;
  const JunctionMaps maps = encode(w, {o.bins, o.bins});
  Grid3D packed(3, o.bins, o.bins);
  std::size_t count = 0;
  for (std::size_t y = 0; y < o.bins; ++y) {
    for (std::size_t x = 0; x < o.bins; ++x) {
      packed(0, y, x) = maps.likelihood(y, x);
      packed(1, y, x) = maps.offsets(0, y, x);
      packed(2, y, x) = maps.offsets(1, y, x);
      count += maps.likelihood(y, x) > 0.0;
    }
  }
  write_tensor(packed, o.out);
  r.metrics["occupied_bins"] = count;
  return 0;
}

int run_decode(Options& o, Report& r) {
  const Tensor t = load_tensor(o.in, r);
  const auto* packed = std::get_if<Grid3D>(&t);
  if (!packed || packed->channels() != 3) {
    throw ValidationError("decode expects a 3-channel tensor (likelihood, dx, dy)");
  }
  JunctionMaps maps;
  maps.width = o.coord_space[0];
  maps.height = o.coord_space[1];
  maps.likelihood = Grid2D(packed->rows(), packed->cols());
  maps.offsets = Grid3D(2, packed->rows(), packed->cols());
  for (std::size_t y = 0; y < packed->rows(); ++y) {
    for (std::size_t x = 0; x < packed->cols(); ++x) {
      maps.likelihood(y, x) = (*packed)(0, y, x);
      maps.offsets(0, y, x) = (*packed)(1, y, x);
      maps.offsets(1, y, x) = (*packed)(2, y, x);
    }
  }
  r.config["k"] = o.k;
  r.config["coord_space"] = o.coord_space;
  Wireframe w;
  w.width = maps.width;
  w.height = maps.height;
  w.junction_scores.emplace();
  for (const ScoredJunction& j : decode_topk(maps, o.k)) {
    w.junctions.push_back(j.p);
    w.junction_scores->push_back(j.score);
  }
  write_wireframe(w, o.out);
  r.metrics["junctions"] = w.junctions.size();
  return 0;
}

json sample_json(const std::vector<LabeledLine>& samples) {
  json out = json::array();
  for (const auto& s : samples) {
    out.push_back({{"p1", {s.line.p1.x, s.line.p1.y}},
                   {"p2", {s.line.p2.x, s.line.p2.y}},
                   {"label", to_string(s.label)},
                   {"origin", to_string(s.origin)}});
  }
  return out;
}

int run_sample(Options& o, Report& r) {
  o.sampler.check();
  const Wireframe gt = to_canonical(load_wireframe(o.gt_path, r));
  const Wireframe pred = to_canonical(load_wireframe(o.pred_path, r));
  const auto& c = o.sampler;
  r.config = {{"seed", o.seed},        {"n_s_pos", c.n_s_pos}, {"n_s_neg", c.n_s_neg},
              {"n_d_pos", c.n_d_pos},  {"n_d_neg", c.n_d_neg}, {"n_d_rand", c.n_d_rand},
              {"eta", c.eta},          {"hard_pool_size", c.hard_pool_size},
              {"raster_size", c.raster_size}};
  auto samples = sample_static(gt, c, o.seed);
  const auto dynamic = sample_dynamic(scored_junctions(pred), gt, static_negatives(gt, c), c, o.seed + kDynamicSeedOffset);
  samples.insert(samples.end(), dynamic.begin(), dynamic.end());
  write_file(o.out, sample_json(samples).dump() + "\n");
  r.metrics["samples"] = samples.size();
  return 0;
}

int run_loipool(Options& o, Report& r) {
  const Tensor t = load_tensor(o.fm, r);
  const auto* fm = std::get_if<Grid3D>(&t);
  if (!fm) throw ValidationError("feature map must be a 3-D (C, H, W) tensor");
  if (o.line.size() != 4) throw ValidationError("--line takes x1,y1,x2,y2");
  r.config = {{"np", o.loi.n_points}, {"stride", o.loi.pool_stride}, {"line", o.line}};
  const LoiFeature f = loi_pool_forward(*fm, {{o.line[0], o.line[1]}, {o.line[2], o.line[3]}}, o.loi);
  std::string text;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.9g", k ? " " : "", f.values[k]);
    text += buf;
  }
  text += "\n";
  if (!o.out.empty()) write_file(o.out, text);
  std::fputs(text.c_str(), stdout);
  r.metrics["length"] = f.values.size();
  return 0;
}

int run_eval_sap(Options& o, Report& r) {
  const Dataset d = load_dataset(o.gt_dir, o.pred_dir, r);
  PerImage<ScoredLine> pred;
  PerImage<Segment> gt;
  for (std::size_t i = 0; i < d.ids.size(); ++i) {
    pred[d.ids[i]] = to_scored_lines(d.pred[i]);
    gt[d.ids[i]] = to_segments(d.gt[i]);
  }
  r.config["theta"] = o.theta;
  std::vector<LabeledCurve> curves;
  for (double theta : o.theta) {
    curves.push_back({label_with("sAP", theta), structural_ap(pred, gt, theta, o.threads)});
    r.metrics[curves.back().label] = curves.back().curve.ap;
  }
  emit_curves(curves, o.pr_out, "");
  return 0;
}

int run_eval_jmap(Options& o, Report& r) {
  const Dataset d = load_dataset(o.gt_dir, o.pred_dir, r);
  PerImage<ScoredJunction> pred;
  PerImage<Point2> gt;
  for (std::size_t i = 0; i < d.ids.size(); ++i) {
    pred[d.ids[i]] = scored_junctions(d.pred[i]);
    gt[d.ids[i]] = d.gt[i].junctions;
  }
  r.config["tau"] = o.tau;
  const JunctionMapResult res = junction_map(pred, gt, o.tau, o.threads);
  std::vector<LabeledCurve> curves;
  for (std::size_t k = 0; k < res.thresholds.size(); ++k) {
    curves.push_back({label_with("APJ", res.thresholds[k]), res.curves[k]});
    r.metrics[curves.back().label] = res.curves[k].ap;
  }
  r.metrics["mAPJ"] = res.mean_ap;
  emit_curves(curves, o.pr_out, "# mAPJ=" + fmt(res.mean_ap) + "\n");
  std::printf("mAPJ %s\n", fmt(res.mean_ap).c_str());
  return 0;
}

int run_eval_aph(Options& o, Report& r) {
  if (o.tolerance > 0.0) o.heatmap.tolerance = o.tolerance;
  o.heatmap.check();
  const Dataset d = load_dataset(o.gt_dir, o.pred_dir, r);
  PerImage<ScoredLine> pred;
  PerImage<Segment> gt;
  for (std::size_t i = 0; i < d.ids.size(); ++i) {
    pred[d.ids[i]] = to_scored_lines(d.pred[i]);
    gt[d.ids[i]] = to_segments(d.gt[i]);
  }
  r.config = {{"resolution", o.heatmap.resolution}, {"tolerance", o.heatmap.tolerance_px()}};
  const HeatmapResult res = heatmap_pr(pred, gt, o.heatmap, o.threads);
  r.metrics["APH"] = res.curve.ap;
  r.metrics["FH"] = res.f_h;
  emit_curves({{"APH", res.curve}}, o.pr_out, "# FH=" + fmt(res.f_h) + "\n");
  std::printf("FH %s\n", fmt(res.f_h).c_str());
  return 0;
}

int run_postprocess(Options& o, Report& r) {
  const Wireframe w = load_wireframe(o.in, r);
  o.overlap.diagonal = w.diagonal();
  r.config = {{"eta_s", o.overlap.eta_s}};
  const auto lines = to_scored_lines(w);
  const auto kept = resolve_overlaps(lines, o.overlap);
  write_wireframe(from_scored_lines(kept, w.width, w.height), o.out);
  r.metrics["lines_in"] = lines.size();
  r.metrics["lines_out"] = kept.size();
  return 0;
}

int run_synth(Options& o, Report& r) {
  o.scene.seed = o.seed;
  o.scene.layout = parse_layout(o.layout);
  r.config = {{"seed", o.seed},
              {"layout", o.layout},
              {"n_junctions", o.scene.n_junctions},
              {"n_lines", o.scene.n_lines},
              {"min_length", o.scene.min_length}};
  const Wireframe w = gen_scene(o.scene);
  write_wireframe(w, o.out);
  r.metrics["lines"] = w.edges.size();
  return 0;
}

int run_degrade(Options& o, Report& r, bool seed_given) {
  const DegradeSpec spec{parse_degrade_mode(o.mode), o.param};
  if (spec.mode != DegradeMode::kSplitMidpoint && !seed_given) {
    throw ValidationError("--seed is required for degrade mode " + o.mode);
  }
  const Wireframe w = load_wireframe(o.in, r);
  r.config = {{"mode", o.mode}, {"param", o.param}, {"seed", o.seed}};
  const Wireframe out = degrade(w, spec, o.seed);
  write_wireframe(out, o.out);
  r.metrics["lines"] = out.edges.size();
  return 0;
}

void write_report(const fs::path& path, const Report& r, double seconds) {
  const json j = {{"command", r.command},
                  {"inputs", r.inputs},
                  {"config", r.config},
                  {"metrics", r.metrics},
                  {"wall_time", seconds}};
  write_file(path, j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wfkit: wireframe parsing geometry and evaluation toolkit", "wfkit"};
  app.require_subcommand(1);
  Options o;
  std::string report_path;
  app.add_option("--json-report", report_path, "Write a JSON run report to this path");
  app.add_option("--threads", o.threads, "Worker threads for per-image evaluation")->check(CLI::PositiveNumber);

  auto* enc = app.add_subcommand("encode", "Wireframe JSON to junction likelihood/offset tensor");
  enc->add_option("--in", o.in)->required();
  enc->add_option("--out", o.out)->required();
  enc->add_option("--bins", o.bins, "Bins per side")->check(CLI::PositiveNumber);

  auto* dec = app.add_subcommand("decode", "Junction tensor to scored junctions");
  dec->add_option("--in", o.in)->required();
  dec->add_option("--out", o.out)->required();
  dec->add_option("--k", o.k, "Maximum junctions kept");
  dec->add_option("--coord-space", o.coord_space, "Output coordinate space W,H")->delimiter(',')->expected(2);

  auto* smp = app.add_subcommand("sample", "Static and dynamic line samples");
  smp->add_option("--gt", o.gt_path)->required();
  smp->add_option("--pred", o.pred_path, "Wireframe holding predicted junctions")->required();
  smp->add_option("--seed", o.seed)->required();
  smp->add_option("--out", o.out)->required();
  smp->add_option("--n-s-pos", o.sampler.n_s_pos);
  smp->add_option("--n-s-neg", o.sampler.n_s_neg);
  smp->add_option("--n-d-pos", o.sampler.n_d_pos);
  smp->add_option("--n-d-neg", o.sampler.n_d_neg);
  smp->add_option("--n-d-rand", o.sampler.n_d_rand);
  smp->add_option("--eta", o.sampler.eta);
  smp->add_option("--hard-pool", o.sampler.hard_pool_size);
  smp->add_option("--raster", o.sampler.raster_size);

  auto* loi = app.add_subcommand("loipool", "Pooled line-of-interest feature of one line");
  loi->add_option("--fm", o.fm, "Feature map tensor (C, H, W)")->required();
  loi->add_option("--line", o.line, "x1,y1,x2,y2 in feature-map pixels")->delimiter(',')->expected(4)->required();
  loi->add_option("--np", o.loi.n_points);
  loi->add_option("--stride", o.loi.pool_stride);
  loi->add_option("--out", o.out, "Also write the vector to this file");

  auto* ev = app.add_subcommand("eval", "Dataset evaluation over paired directories");
  ev->require_subcommand(1);
  const auto add_dirs = [&](CLI::App* sub) {
    sub->add_option("--gt", o.gt_dir)->required();
    sub->add_option("--pred", o.pred_dir)->required();
    sub->add_option("--pr-out", o.pr_out, "PR curve CSV");
  };
  auto* sap = ev->add_subcommand("sap", "Structural AP");
  add_dirs(sap);
  sap->add_option("--theta", o.theta)->delimiter(',');
  auto* jmap = ev->add_subcommand("jmap", "Junction mAP");
  add_dirs(jmap);
  jmap->add_option("--tau", o.tau)->delimiter(',');
  auto* aph = ev->add_subcommand("aph", "Heat-map AP and F-score");
  add_dirs(aph);
  aph->add_option("--resolution", o.heatmap.resolution);
  aph->add_option("--tolerance", o.tolerance, "Matching radius in pixels");

  auto* post = app.add_subcommand("postprocess", "Remove overlapping lines");
  post->add_option("--in", o.in)->required();
  post->add_option("--out", o.out)->required();
  post->add_option("--eta-s", o.overlap.eta_s);

  auto* syn = app.add_subcommand("synth", "Generate a synthetic wireframe");
  syn->add_option("--seed", o.seed)->required();
  syn->add_option("--out", o.out)->required();
  syn->add_option("--layout", o.layout)->check(CLI::IsMember({"grid", "boxes", "random"}));
  syn->add_option("--n-junctions", o.scene.n_junctions);
  syn->add_option("--n-lines", o.scene.n_lines);
  syn->add_option("--min-length", o.scene.min_length);

  auto* deg = app.add_subcommand("degrade", "Turn a wireframe into a flawed prediction");
  deg->add_option("--mode", o.mode)
      ->required()
      ->check(CLI::IsMember({"split_midpoint", "duplicate", "jitter", "drop"}));
  deg->add_option("--param", o.param, "Jitter sigma or line fraction");
  auto* deg_seed = deg->add_option("--seed", o.seed);
  deg->add_option("--in", o.in)->required();
  deg->add_option("--out", o.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    int status = 0;
    if (enc->parsed()) {
      report.command = "encode";
      status = run_encode(o, report);
    } else if (dec->parsed()) {
      report.command = "decode";
      status = run_decode(o, report);
    } else if (smp->parsed()) {
      report.command = "sample";
      status = run_sample(o, report);
    } else if (loi->parsed()) {
      report.command = "loipool";
      status = run_loipool(o, report);
    } else if (sap->parsed()) {
      report.command = "eval sap";
      status = run_eval_sap(o, report);
    } else if (jmap->parsed()) {
      report.command = "eval jmap";
      status = run_eval_jmap(o, report);
    } else if (aph->parsed()) {
      report.command = "eval aph";
      status = run_eval_aph(o, report);
    } else if (post->parsed()) {
      report.command = "postprocess";
      status = run_postprocess(o, report);
    } else if (syn->parsed()) {
      report.command = "synth";
      status = run_synth(o, report);
    } else if (deg->parsed()) {
      report.command = "degrade";
      status = run_degrade(o, report, deg_seed->count() > 0);
    }
    if (!report_path.empty()) {
      report.config["threads"] = o.threads;
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_report(report_path, report, seconds);
    }
    return status;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
