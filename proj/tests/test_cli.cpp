#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "wfkit/io.hpp"
#include "wfkit/synth.hpp"

using namespace wfkit;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "wfkit_test_cli";

// Runs the CLI with stdout and stderr captured; returns the exit status.
int run(const std::string& args, std::string* output = nullptr) {
  fs::create_directories(kDir);
  const fs::path log = kDir / "log.txt";
  const std::string cmd = std::string(WFKIT_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  if (output) *output = read_file(log);
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string path(const std::string& name) { return (kDir / name).string(); }

}  // namespace

TEST_CASE("synth writes a valid wireframe") {
  CHECK(run("synth --seed 1 --layout grid --out " + path("s.json")) == 0);
  const Wireframe w = read_wireframe(path("s.json"));
  CHECK(validate(w).empty());
  CHECK(w.edges.size() == 24);
}

TEST_CASE("identity evaluation reports 1") {
  fs::create_directories(kDir / "d");
  for (int k = 0; k < 3; ++k) {
    SceneSpec spec;
    spec.seed = static_cast<std::uint64_t>(k);
    write_wireframe(gen_scene(spec), kDir / "d" / ("im" + std::to_string(k) + ".json"));
  }
  std::string out;
  CHECK(run("eval sap --theta 10 --gt " + path("d") + " --pred " + path("d"), &out) == 0);
  CHECK(out == "sAP10 1\n");
  CHECK(run("eval jmap --gt " + path("d") + " --pred " + path("d"), &out) == 0);
  CHECK(out.find("mAPJ 1\n") != std::string::npos);

  CHECK(run("--json-report " + path("r.json") + " eval aph --gt " + path("d") + " --pred " + path("d") +
            " --pr-out " + path("aph.csv")) == 0);
  const auto report = nlohmann::json::parse(read_file(path("r.json")));
  CHECK(report["command"] == "eval aph");
  CHECK(report["metrics"]["APH"] == 1.0);
  CHECK(report["inputs"].size() == 6);
  CHECK(read_file(path("aph.csv")).find("# APH AP=1\n") != std::string::npos);
}

TEST_CASE("directory mismatch is an error") {
  fs::create_directories(kDir / "e");
  SceneSpec spec;
  write_wireframe(gen_scene(spec), kDir / "e" / "other.json");
  std::string out;
  CHECK(run("eval sap --gt " + path("d") + " --pred " + path("e"), &out) == 1);
  CHECK(out.find("only one of") != std::string::npos);
}

TEST_CASE("usage and validation errors exit 1") {
  std::string out;
  CHECK(run("sample --gt a.json --pred b.json --out c.json", &out) == 1);
  CHECK(out.find("--seed") != std::string::npos);
  CHECK(run("frobnicate", &out) == 1);
  CHECK(out.find("Usage") != std::string::npos);
  CHECK(run("synth --seed 1 --out " + path("x.json") + " --bogus", &out) == 1);
  CHECK(run("synth --seed 1 --n-junctions 15 --out " + path("x.json"), &out) == 1);
  CHECK(run("degrade --mode jitter --param 1 --in " + path("s.json") + " --out " + path("j.json"), &out) == 1);
  CHECK(out.find("--seed") != std::string::npos);
  CHECK(run("degrade --mode split_midpoint --in " + path("s.json") + " --out " + path("m.json")) == 0);
}

TEST_CASE("I/O errors exit 2") {
  CHECK(run("encode --in " + path("missing.json") + " --out " + path("m.wft")) == 2);
  write_file(kDir / "garbage.wft", "nope");
  CHECK(run("loipool --fm " + path("garbage.wft") + " --line 0,0,3,3") == 2);
  CHECK(run("eval sap --gt " + path("nowhere") + " --pred " + path("d")) == 2);
}

TEST_CASE("encode, decode and loipool") {
  CHECK(run("encode --in " + path("s.json") + " --out " + path("maps.wft")) == 0);
  CHECK(run("decode --in " + path("maps.wft") + " --out " + path("junctions.json")) == 0);
  const Wireframe original = read_wireframe(path("s.json"));
  const Wireframe decoded = read_wireframe(path("junctions.json"));
  REQUIRE(decoded.junctions.size() == original.junctions.size());
  for (const Point2& p : original.junctions) {
    double best = 1e9;
    for (const Point2& q : decoded.junctions) best = std::min(best, distance(p, q));
    CHECK(best < 1e-4);  // tensor payload is float32
  }

  Grid3D fm(1, 4, 4);
  for (std::size_t x = 0; x < 4; ++x) fm(0, 1, x) = static_cast<double>(x);
  write_tensor(fm, kDir / "fm.wft");
  std::string out;
  CHECK(run("loipool --fm " + path("fm.wft") + " --line 0,1,3,1 --np 4 --stride 2", &out) == 0);
  CHECK(out == "1 3\n");
}

TEST_CASE("sample and postprocess") {
  CHECK(run("degrade --mode duplicate --param 1 --seed 2 --in " + path("s.json") + " --out " + path("dup.json")) == 0);
  CHECK(run("postprocess --in " + path("dup.json") + " --out " + path("clean.json")) == 0);
  CHECK(read_wireframe(path("clean.json")).edges.size() == 24);

  CHECK(run("sample --gt " + path("s.json") + " --pred " + path("junctions.json") + " --seed 7 --out " +
            path("samples.json")) == 0);
  const auto samples = nlohmann::json::parse(read_file(path("samples.json")));
  CHECK(samples.size() == 300 + 40 + 300 + 80 + 600);
  CHECK(samples[0].contains("p1"));
  CHECK(samples[0]["origin"] == "S+");
}
