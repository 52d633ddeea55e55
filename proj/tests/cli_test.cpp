// SPDX-License-Identifier: Apache-2.0
// Runs the vorinv binary end to end and checks outputs and exit codes.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vorinv/forward.hpp"
#include "vorinv/tess.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result run_shell(const std::string& cmd) {
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Result run(const std::string& args) {
  return run_shell(std::string(VORINV_BIN) + " " + args + " 2>/dev/null");
}

Result run_stderr(const std::string& args) {
  return run_shell(std::string(VORINV_BIN) + " " + args + " 2>&1 >/dev/null");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vorinv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Every cell of this set has at least two interior vertices, so all
  // methods succeed on it.
  std::string good_fixture() {
    const std::string t = path("good.tess");
    EXPECT_EQ(run("generate --n 12 --seed 3 --output " + t).code, 0);
    return t;
  }

  fs::path dir_;
};

TEST_F(Cli, GenerateIsDeterministic) {
  ASSERT_EQ(run("generate --n 10 --seed 7 --output " + path("a.tess")).code, 0);
  ASSERT_EQ(run("generate --n 10 --seed 7 --output " + path("b.tess")).code, 0);
  EXPECT_EQ(slurp(path("a.tess")), slurp(path("b.tess")));
  EXPECT_EQ(slurp(path("a.gen")), slurp(path("b.gen")));
  EXPECT_EQ(slurp(path("a.gen")).rfind("gen 10\n", 0), 0u);
}

TEST_F(Cli, SeedFromEnvironment) {
  ASSERT_EQ(run("generate --n 10 --seed 7 --output " + path("a.tess")).code, 0);
  ASSERT_EQ(run("generate --n 10 --output " + path("b.tess")).code, 0);
  EXPECT_NE(slurp(path("a.tess")), slurp(path("b.tess")));
  const std::string cmd = "env VORINV_SEED=7 " + std::string(VORINV_BIN) +
                          " generate --n 10 --output " + path("c.tess");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(path("a.tess")), slurp(path("c.tess")));
}

TEST_F(Cli, GenerateHexPassesCheck) {
  ASSERT_EQ(run("generate --lattice hex --rows 4 --cols 4 --output " + path("h.tess")).code, 0);
  const Result r = run("check " + path("h.tess"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("is_voronoi: true"), std::string::npos);
}

TEST_F(Cli, GenerateTooFewPoints) {
  const Result r = run_stderr("generate --n 1 --output " + path("x.tess"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find(">= 2"), std::string::npos) << r.out;
}

TEST_F(Cli, InvertRecoversGenerators) {
  const std::string t = good_fixture();
  const Result r = run("invert " + t + " --method alg3");
  ASSERT_EQ(r.code, 0);
  const auto g = vorinv::parse_generators(std::string_view(slurp(path("good.gen"))));
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "polygon,x,y,spread,method,n_pairs,n_dropped");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    double x, y;
    ASSERT_EQ(std::sscanf(line.c_str(), "%*[^,],%lf,%lf", &x, &y), 2) << line;
    double best = 1e9;
    for (const auto& p : g.points) best = std::min(best, std::hypot(p.x - x, p.y - y));
    EXPECT_LT(best, 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, g.size());
}

TEST_F(Cli, InvertAllGivesFourBlocks) {
  const std::string t = good_fixture();
  const Result r = run("invert " + t + " --method all");
  ASSERT_EQ(r.code, 0);
  for (const char* tag : {",alg1,", ",alg2,", ",alg3,", ",lsq,"}) {
    EXPECT_NE(r.out.find(tag), std::string::npos) << tag;
  }
  EXPECT_EQ(static_cast<std::size_t>(std::count(r.out.begin(), r.out.end(), '\n')), 1u + 4u * 12u);
}

TEST_F(Cli, InvertSingleVertexCellsFail) {
  write(path("three.gen"), "gen 3\nbounds -3 -3 3 3\np 0 0\np 2 0\np 0 2\n");
  // Build the three-generator diagram through the library to avoid depending
  // on another subcommand here.
  const auto d = vorinv::build_voronoi(vorinv::parse_generators(std::string_view(slurp(path("three.gen")))));
  write(path("three.tess"), vorinv::serialize_tessellation(d.tessellation));
  const Result r = run("invert " + path("three.tess") + " --method alg1");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("nan"), std::string::npos);
}

TEST_F(Cli, InvertMalformedFile) {
  write(path("bad.tess"), "tess 2 0\nv 0 0\nv 1 oops\nadj 0: 1\nadj 1: 0\n");
  const Result r = run_stderr("invert " + path("bad.tess"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST_F(Cli, InvertBadMethod) {
  EXPECT_EQ(run("invert " + good_fixture() + " --method alg9").code, 2);
}

TEST_F(Cli, CheckPerturbed) {
  const std::string t = good_fixture();
  const auto tess = vorinv::parse_tessellation(std::string_view(slurp(t)));
  write(path("noisy.tess"), vorinv::serialize_tessellation(vorinv::perturb_vertices(tess, 0.01 * std::sqrt(2.0), 1)));
  EXPECT_EQ(run("check " + t).code, 0);
  const Result r = run("check " + path("noisy.tess"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("is_voronoi: false"), std::string::npos);
}

TEST_F(Cli, CheckDegreeFour) {
  write(path("sq.gen"), "gen 4\nbounds -1 -1 2 2\np 0 0\np 1 0\np 1 1\np 0 1\n");
  const auto d = vorinv::build_voronoi(vorinv::parse_generators(std::string_view(slurp(path("sq.gen")))));
  write(path("sq.tess"), vorinv::serialize_tessellation(d.tessellation));
  const Result r = run("check " + path("sq.tess"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("DegenerateVertex"), std::string::npos) << r.out;
}

TEST_F(Cli, RoundtripExact) {
  const std::string t = good_fixture();
  const Result r = run("roundtrip " + t + " --generators " + path("good.gen") + " --method all");
  ASSERT_EQ(r.code, 0);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "sigma,seed,method,generator_rms,vertex_rms,matched_fraction,status");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    double vertex_rms = 1;
    ASSERT_EQ(std::sscanf(line.c_str(), "%*[^,],%*[^,],%*[^,],%*[^,],%lf", &vertex_rms), 1) << line;
    EXPECT_LT(vertex_rms, 1e-6);
    ++rows;
  }
  EXPECT_EQ(rows, 4u);
}

TEST_F(Cli, RoundtripMissingFile) {
  EXPECT_EQ(run("roundtrip " + path("missing.tess")).code, 2);
}

TEST_F(Cli, RoundtripNoiseSummary) {
  const std::string t = good_fixture();
  const Result r = run_stderr("roundtrip " + t + " --sigma 1e-3 --seeds 5 --methods alg1,alg2,alg3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("median_generator_rms"), std::string::npos);
  EXPECT_NE(r.out.find("alg3"), std::string::npos);
}

TEST_F(Cli, SweepIsDeterministic) {
  const std::string args = "sweep --n 20 --seed 3 --sigma 0,1e-3 --relative --seeds 3 --method all";
  const Result a = run(args);
  const Result b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(static_cast<std::size_t>(std::count(a.out.begin(), a.out.end(), '\n')), 1u + 2u * 3u * 4u);
}

TEST_F(Cli, ConfigFileFlagsTakePrecedence) {
  write(path("run.cfg"), "# sweep settings\nn = 20\nseed = 3\nsigma = 1e-3\nseeds = 2\nmethod = alg1\n");
  const Result a = run("sweep --config " + path("run.cfg"));
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find(",alg1,"), std::string::npos);
  const Result b = run("sweep --config " + path("run.cfg") + " --method lsq");
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out.find(",alg1,"), std::string::npos);
  EXPECT_NE(b.out.find(",lsq,"), std::string::npos);
}

TEST_F(Cli, RenderIsPureAndCountsCircles) {
  const std::string t = good_fixture();
  ASSERT_EQ(run("render " + t + " --output " + path("a.svg")).code, 0);
  ASSERT_EQ(run("render " + t + " --output " + path("b.svg")).code, 0);
  const std::string plain = slurp(path("a.svg"));
  EXPECT_EQ(plain, slurp(path("b.svg")));
  EXPECT_NE(plain.find("<polyline"), std::string::npos);
  EXPECT_EQ(plain.find("<circle"), std::string::npos);

  ASSERT_EQ(run("render " + t + " --generators " + path("good.gen") + " --circles --output " +
                path("c.svg"))
                .code,
            0);
  const std::string svg = slurp(path("c.svg"));
  const auto tess = vorinv::parse_tessellation(std::string_view(slurp(t)));
  std::size_t interior = 0;
  for (std::size_t v = 0; v < tess.n_ordinary; ++v) interior += tess.degree(v) >= 3;
  std::size_t circles = 0;
  for (std::size_t at = 0; (at = svg.find("class=\"empty-circle\"", at)) != std::string::npos; ++at) {
    ++circles;
  }
  EXPECT_EQ(circles, interior);
}

TEST_F(Cli, RenderUnreadable) {
  EXPECT_EQ(run("render " + path("nope.tess") + " --output " + path("x.svg")).code, 2);
}

TEST_F(Cli, GridDump) {
  write(path("two.gen"), "gen 2\nbounds 0 0 1 1\np 0.25 0.5\np 0.75 0.5\n");
  const Result r = run("grid " + path("two.gen") + " --resolution 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "labels 2\n0 1\n0 1\n");
  EXPECT_EQ(run("grid " + path("two.gen") + " --resolution 1").code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, ChainsWithoutEdits) {
  ASSERT_EQ(run("generate --n 15 --seed 4 --output " + path("c.tess")).code, 0);
  const Result inv = run("invert " + path("c.tess") + " --method lsq --output " + path("c.csv"));
  ASSERT_EQ(inv.code, 0);
  EXPECT_EQ(run("render " + path("c.tess") + " --estimates " + path("c.csv") + " --output " +
                path("c.svg"))
                .code,
            0);
  EXPECT_NE(slurp(path("c.svg")).find("class=\"estimate\""), std::string::npos);
}

}  // namespace
