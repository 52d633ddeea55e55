// SPDX-License-Identifier: Apache-2.0
//
// vorinv: build Voronoi diagrams, invert tessellations to their generators,
// test Voronoi-ness and measure inversion error.
//
// Exit codes: 0 success / is Voronoi, 2 usage or input error,
//             3 not a Voronoi diagram, 4 inversion failure.
#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "svg.hpp"
#include "vorinv/error.hpp"
#include "vorinv/forward.hpp"
#include "vorinv/harness.hpp"
#include "vorinv/invert.hpp"
#include "vorinv/tess.hpp"

namespace {

using namespace vorinv;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotVoronoi = 3;
constexpr int kExitInversion = 4;

//! Input problems that map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

Tessellation load_tessellation(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_tessellation(std::string_view(text));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

GeneratorSet load_generators(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_generators(std::string_view(text));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + " '" + s + "'");
  }
}

Rect parse_bounds(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw UsageError("--bounds expects x0,y0,x1,y1");
  const Rect r{to_real(parts[0], "bound"), to_real(parts[1], "bound"), to_real(parts[2], "bound"),
               to_real(parts[3], "bound")};
  if (!r.valid()) throw UsageError("--bounds must satisfy x0 < x1 and y0 < y1");
  return r;
}

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};
  std::vector<Method> out;
  for (const auto& tag : split(s, ',')) {
    auto m = parse_method(tag);
    if (!m) throw UsageError("unknown method '" + tag + "' (expected alg1, alg2, alg3, lsq or all)");
    out.push_back(*m);
  }
  if (out.empty()) throw UsageError("no method selected");
  return out;
}

std::vector<double> parse_sigmas(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    const double v = to_real(tok, "sigma");
    if (v < 0) throw UsageError("sigma must be >= 0");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty --sigma list");
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("VORINV_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("VORINV_SEED must be a nonnegative integer");
    }
  }
  return 0;
}

// A single integer is a count of consecutive seeds starting at `base`;
// a comma list is taken literally.
std::vector<std::uint64_t> parse_seeds(const std::string& s, std::uint64_t base) {
  std::vector<std::uint64_t> out;
  try {
    if (s.find(',') == std::string::npos) {
      const unsigned long long count = std::stoull(s);
      if (count == 0) throw UsageError("--seeds count must be >= 1");
      for (unsigned long long i = 0; i < count; ++i) out.push_back(base + i);
    } else {
      for (const auto& tok : split(s, ',')) out.push_back(std::stoull(tok));
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("invalid --seeds '" + s + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::size_t n = 10;
  std::optional<std::uint64_t> seed;
  std::string bounds;
  std::string lattice = "random";
  std::size_t rows = 4;
  std::size_t cols = 4;
  std::string output;
  std::string generators_out;
};

int cmd_generate(const GenerateArgs& a) {
  GeneratorSet g;
  if (a.lattice == "random") {
    if (a.n < 2) throw UsageError("--n must be >= 2 (got " + std::to_string(a.n) + ")");
    g.bounds = a.bounds.empty() ? Rect{0, 0, 1, 1} : parse_bounds(a.bounds);
    std::mt19937_64 rng(a.seed.value_or(default_seed()));
    std::uniform_real_distribution<double> ux(g.bounds.xmin, g.bounds.xmax);
    std::uniform_real_distribution<double> uy(g.bounds.ymin, g.bounds.ymax);
    while (g.points.size() < a.n) {
      const Point2 p{ux(rng), uy(rng)};
      if (g.bounds.contains_strictly(p)) g.points.push_back(p);
    }
  } else if (a.lattice == "hex") {
    if (a.rows * a.cols < 2) throw UsageError("hex lattice needs rows * cols >= 2 (n >= 2)");
    const double h = std::sqrt(3.0) / 2.0;
    for (std::size_t r = 0; r < a.rows; ++r) {
      for (std::size_t c = 0; c < a.cols; ++c) {
        g.points.push_back({static_cast<double>(c) + 0.5 * static_cast<double>(r % 2),
                            static_cast<double>(r) * h});
      }
    }
    const double xmax = static_cast<double>(a.cols) - 1.0 + (a.rows > 1 ? 0.5 : 0.0);
    g.bounds = a.bounds.empty()
                   ? Rect{-0.25, -0.25, xmax + 0.25, static_cast<double>(a.rows - 1) * h + 0.25}
                   : parse_bounds(a.bounds);
  } else {
    throw UsageError("--lattice must be 'random' or 'hex'");
  }

  VoronoiDiagram d;
  try {
    d = build_voronoi(g);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::string gen_path = a.generators_out;
  if (gen_path.empty()) {
    const auto dot = a.output.find_last_of('.');
    const auto slash = a.output.find_last_of('/');
    gen_path = (dot != std::string::npos && (slash == std::string::npos || dot > slash))
                   ? a.output.substr(0, dot) + ".gen"
                   : a.output + ".gen";
  }
  write_output(gen_path, serialize_generators(g));
  write_output(a.output, serialize_tessellation(d.tessellation));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// invert

struct InvertArgs {
  std::string input;
  std::string method = "alg3";
  double epsilon = 1e-4;
  std::string output;
};

std::string estimate_rows(const GeneratorEstimate& est) {
  std::string out;
  for (std::size_t i = 0; i < est.positions.size(); ++i) {
    const auto& d = est.per_polygon[i];
    const Point2 p = est.positions[i];
    const bool ok = is_finite(p);
    out += std::to_string(i) + "," + (ok ? format_real(p.x) : "nan") + "," +
           (ok ? format_real(p.y) : "nan") + "," + (ok ? format_real(d.spread) : "nan") + "," +
           std::string(to_string(est.method)) + "," + std::to_string(d.n_pairs) + "," +
           std::to_string(d.n_dropped) + "\n";
  }
  return out;
}

int cmd_invert(const InvertArgs& a) {
  if (!(a.epsilon > 0)) throw UsageError("--epsilon must be > 0");
  const auto methods = parse_methods(a.method);
  const Tessellation t = load_tessellation(a.input);
  std::vector<Polygon> polygons;
  try {
    polygons = extract_polygons(t);
  } catch (const Error& e) {
    throw UsageError(a.input + ": " + e.what());
  }
  InvertOptions opt;
  opt.epsilon = a.epsilon;
  opt.strict = false;
  std::string csv = "polygon,x,y,spread,method,n_pairs,n_dropped\n";
  int code = kExitOk;
  for (Method m : methods) {
    try {
      const GeneratorEstimate est = invert(t, polygons, m, opt);
      csv += estimate_rows(est);
      for (const auto& w : est.warnings) std::cerr << to_string(m) << ": warning: " << w << "\n";
      if (!est.complete()) code = kExitInversion;
      if (est.least_squares && est.least_squares->rank_deficient) code = kExitInversion;
    } catch (const Error& e) {
      std::cerr << to_string(m) << ": error: " << e.what() << "\n";
      code = kExitInversion;
    }
  }
  write_output(a.output, csv);
  return code;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string input;
  std::optional<double> tolerance;
};

int cmd_check(const CheckArgs& a) {
  const Tessellation t = load_tessellation(a.input);
  const double tol = a.tolerance.value_or(1e-7 * bounding_diagonal(t));
  if (tol < 0) throw UsageError("--tolerance must be >= 0");
  RecognitionVerdict v;
  try {
    v = recognize_voronoi(t, tol);
  } catch (const Error& e) {
    std::cout << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << "is_voronoi: " << (v.is_voronoi ? "true" : "false") << "\n";
  std::cout << "tolerance: " << format_real(v.tolerance_used) << "\n";
  if (!v.planar) std::cout << "planar: false\n";
  std::cout << "polygons: " << v.per_polygon_spread.size() << "\n";
  std::cout << "failing:";
  for (std::size_t i : v.failing_polygons) std::cout << " " << i;
  std::cout << "\n";
  if (!v.nonconvex_polygons.empty()) {
    std::cout << "nonconvex:";
    for (std::size_t i : v.nonconvex_polygons) std::cout << " " << i;
    std::cout << "\n";
  }
  for (std::size_t i = 0; i < v.per_polygon_spread.size(); ++i) {
    std::cout << "spread " << i << ": " << format_real(v.per_polygon_spread[i]) << "\n";
  }
  return v.is_voronoi ? kExitOk : kExitNotVoronoi;
}

// ---------------------------------------------------------------------------
// roundtrip / sweep

struct SweepArgs {
  std::string input;       // roundtrip: tessellation
  std::string generators;  // truth (roundtrip) or sweep source
  std::size_t n = 50;
  std::optional<std::uint64_t> seed;
  std::string bounds;
  std::string methods = "all";
  std::string sigma;
  std::string seeds = "1";
  bool relative = false;
  std::string mode = "gaussian";
  double epsilon = 1e-4;
  std::string output;
  std::string summary;
  std::string localization;
};

SweepOptions sweep_options(const SweepArgs& a) {
  if (!(a.epsilon > 0)) throw UsageError("--epsilon must be > 0");
  SweepOptions opt;
  opt.invert.epsilon = a.epsilon;
  if (a.mode == "gaussian") {
    opt.noise = NoiseModel::Gaussian;
  } else if (a.mode == "outlier") {
    opt.noise = NoiseModel::SingleVertex;
  } else {
    throw UsageError("--mode must be 'gaussian' or 'outlier'");
  }
  return opt;
}

int emit_reports(const SweepArgs& a, const std::vector<ErrorReport>& rows) {
  write_output(a.output, reports_to_csv(rows));
  const auto summary = summarize(rows);
  if (a.summary.empty()) {
    std::cerr << summary_table(summary);
  } else {
    write_output(a.summary, summary_table(summary));
  }
  if (!a.localization.empty()) {
    std::string loc = "sigma,seed,method,polygon,error\n";
    for (const auto& r : rows) {
      for (std::size_t f = 0; f < r.per_polygon_error.size(); ++f) {
        loc += format_real(r.sigma) + "," + std::to_string(r.seed) + "," +
               std::string(to_string(r.method)) + "," + std::to_string(f) + "," +
               (std::isnan(r.per_polygon_error[f]) ? "nan" : format_real(r.per_polygon_error[f])) +
               "\n";
      }
    }
    write_output(a.localization, loc);
  }
  for (const auto& r : rows) {
    if (!r.generator_rms && std::isnan(r.vertex_rms)) return kExitInversion;
  }
  return kExitOk;
}

std::vector<double> resolve_sigmas(const SweepArgs& a, double diagonal, NoiseModel model) {
  std::vector<double> sig;
  if (a.sigma.empty()) {
    sig = {model == NoiseModel::SingleVertex ? 0.1 : 0.0};
    if (model == NoiseModel::SingleVertex) sig[0] *= diagonal;
    return sig;
  }
  sig = parse_sigmas(a.sigma);
  if (a.relative) {
    for (double& s : sig) s *= diagonal;
  }
  return sig;
}

int cmd_roundtrip(const SweepArgs& a) {
  const Tessellation t = load_tessellation(a.input);
  const SweepOptions opt = sweep_options(a);
  RoundtripInput in;
  try {
    if (!a.generators.empty()) {
      const GeneratorSet g = load_generators(a.generators);
      const VoronoiDiagram d = build_voronoi(g);
      const Tessellation& ref = d.tessellation;
      bool same = ref.n_ordinary == t.n_ordinary && ref.n_dummy == t.n_dummy &&
                  ref.adjacency == t.adjacency;
      for (std::size_t i = 0; same && i < t.size(); ++i) {
        same = distance(ref.vertices[i], t.vertices[i]) <= 1e-6 * g.bounds.diagonal();
      }
      if (!same) throw UsageError("generator file does not reproduce the input tessellation");
      in = roundtrip_input(d);
    } else {
      in = roundtrip_input(t);
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto sigmas = resolve_sigmas(a, in.bounds.diagonal(), opt.noise);
  const auto seeds = parse_seeds(a.seeds, a.seed.value_or(default_seed()));
  const auto methods = parse_methods(a.methods);
  return emit_reports(a, roundtrip_sweep(in, sigmas, seeds, methods, opt));
}

int cmd_sweep(const SweepArgs& a) {
  const SweepOptions opt = sweep_options(a);
  GeneratorSet g;
  if (!a.generators.empty()) {
    g = load_generators(a.generators);
  } else {
    if (a.n < 2) throw UsageError("--n must be >= 2");
    g.bounds = a.bounds.empty() ? Rect{0, 0, 1, 1} : parse_bounds(a.bounds);
    std::mt19937_64 rng(a.seed.value_or(default_seed()));
    std::uniform_real_distribution<double> ux(g.bounds.xmin, g.bounds.xmax);
    std::uniform_real_distribution<double> uy(g.bounds.ymin, g.bounds.ymax);
    while (g.points.size() < a.n) {
      const Point2 p{ux(rng), uy(rng)};
      if (g.bounds.contains_strictly(p)) g.points.push_back(p);
    }
  }
  const auto sigmas = resolve_sigmas(a, g.bounds.diagonal(), opt.noise);
  const auto seeds = parse_seeds(a.seeds, 0);
  const auto methods = parse_methods(a.methods);
  std::vector<ErrorReport> rows;
  try {
    rows = noise_sweep(g, sigmas, seeds, methods, opt);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return emit_reports(a, rows);
}

// ---------------------------------------------------------------------------
// render / grid

struct RenderArgs {
  std::string input;
  std::string generators;
  std::string estimates;
  bool circles = false;
  double width = 800;
  std::string output;
};

std::vector<Point2> load_estimates(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<Point2> out;
  if (!std::getline(in, line) || line.rfind("polygon,x,y", 0) != 0) {
    throw UsageError(path + ": not an estimate CSV");
  }
  while (std::getline(in, line)) {
    const auto cols = split(line, ',');
    if (cols.size() < 3 || cols[1] == "nan" || cols[2] == "nan") continue;
    out.push_back({to_real(cols[1], "x"), to_real(cols[2], "y")});
  }
  return out;
}

int cmd_render(const RenderArgs& a) {
  const Tessellation t = load_tessellation(a.input);
  tools::RenderOptions opt;
  opt.width_px = a.width;
  if (!a.generators.empty()) opt.generators = load_generators(a.generators).points;
  if (!a.estimates.empty()) opt.estimates = load_estimates(a.estimates);
  if (a.circles) {
    // Circle radius: distance to the nearest known generator; without an
    // overlay, fall back to recovered generators.
    std::vector<Point2> sites = opt.generators;
    if (sites.empty()) sites = opt.estimates;
    if (sites.empty()) {
      InvertOptions inv;
      inv.strict = false;
      try {
        for (const Point2& p : invert(t, Method::AlgIII, inv).positions) {
          if (is_finite(p)) sites.push_back(p);
        }
      } catch (const Error& e) {
        throw UsageError(std::string("--circles: ") + e.what());
      }
    }
    if (sites.empty()) throw UsageError("--circles needs generators; none given or recoverable");
    for (std::size_t v = 0; v < t.n_ordinary; ++v) {
      if (t.degree(v) < 3) continue;
      double r = INFINITY;
      for (const Point2& p : sites) r = std::min(r, distance(p, t.vertices[v]));
      opt.circles.push_back({t.vertices[v], r});
    }
  }
  write_output(a.output, tools::render_svg(t, opt));
  return kExitOk;
}

struct GridArgs {
  std::string input;
  std::size_t resolution = 200;
  std::string output;
};

int cmd_grid(const GridArgs& a) {
  const GeneratorSet g = load_generators(a.input);
  if (a.resolution < 2) throw UsageError("--resolution must be >= 2");
  try {
    write_output(a.output, serialize_labels(grid_growth_labels(g, a.resolution)));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// --config FILE: key=value lines become --key value unless the flag is
// already on the command line.

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) continue;
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
    }
    if (present) continue;
    if (value == "true") {
      args.push_back(flag);
    } else if (value != "false") {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

int run(int argc, char** argv) {
  CLI::App app{"Voronoi diagram construction, inversion and recognition", "vorinv"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a generator file and its forward diagram");
  g->add_option("--n", gen.n, "Number of random generators (>= 2)");
  g->add_option("--seed", gen.seed, "RNG seed (default: $VORINV_SEED or 0)");
  g->add_option("--bounds", gen.bounds, "Clip rectangle x0,y0,x1,y1 (default 0,0,1,1)");
  g->add_option("--lattice", gen.lattice, "random | hex");
  g->add_option("--rows", gen.rows, "Hex lattice rows");
  g->add_option("--cols", gen.cols, "Hex lattice columns");
  g->add_option("--output", gen.output, "Tessellation output path")->required();
  g->add_option("--generators-out", gen.generators_out,
                "Generator output path (default: output with .gen extension)");

  InvertArgs inv;
  auto* i = app.add_subcommand("invert", "Recover generators from a tessellation (CSV)");
  i->add_option("input", inv.input, "Tessellation file")->required();
  i->add_option("--method", inv.method, "alg1 | alg2 | alg3 | lsq | all (or a comma list)");
  i->add_option("--epsilon", inv.epsilon, "Algorithm III ray rotation, radians");
  i->add_option("--output", inv.output, "CSV output path (default stdout)");

  CheckArgs chk;
  auto* c = app.add_subcommand("check", "Decide whether a tessellation is a Voronoi diagram");
  c->add_option("input", chk.input, "Tessellation file")->required();
  c->add_option("--tolerance", chk.tolerance, "Spread tolerance (default 1e-7 x bounding diagonal)");

  SweepArgs rt;
  auto* r = app.add_subcommand("roundtrip", "Invert, re-synthesize and report vertex RMS error");
  r->add_option("input", rt.input, "Tessellation file")->required();
  r->add_option("--generators", rt.generators, "Ground-truth generator file");
  r->add_option("--method,--methods", rt.methods, "Methods (comma list or all)");
  r->add_option("--sigma", rt.sigma, "Comma list of vertex noise levels (default 0)");
  r->add_flag("--relative", rt.relative, "Interpret sigmas as fractions of the diagonal");
  r->add_option("--seeds", rt.seeds, "Seed count or comma list");
  r->add_option("--seed", rt.seed, "First seed when --seeds is a count");
  r->add_option("--mode", rt.mode, "gaussian | outlier");
  r->add_option("--epsilon", rt.epsilon, "Algorithm III ray rotation, radians");
  r->add_option("--output", rt.output, "Report CSV path (default stdout)");
  r->add_option("--summary", rt.summary, "Median table path (default stderr)");
  r->add_option("--localization", rt.localization, "Per-polygon error CSV path");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Noise sweep over a generator set");
  s->add_option("--generators", sw.generators, "Generator file (else random, see --n)");
  s->add_option("--n", sw.n, "Random generator count");
  s->add_option("--seed", sw.seed, "Seed for random generators (default: $VORINV_SEED or 0)");
  s->add_option("--bounds", sw.bounds, "Clip rectangle for random generators");
  s->add_option("--method,--methods", sw.methods, "Methods (comma list or all)");
  s->add_option("--sigma", sw.sigma, "Comma list of noise levels");
  s->add_flag("--relative", sw.relative, "Interpret sigmas as fractions of the diagonal");
  s->add_option("--seeds", sw.seeds, "Seed count (0..N-1) or comma list");
  s->add_option("--mode", sw.mode, "gaussian | outlier");
  s->add_option("--epsilon", sw.epsilon, "Algorithm III ray rotation, radians");
  s->add_option("--output", sw.output, "Report CSV path (default stdout)");
  s->add_option("--summary", sw.summary, "Median table path (default stderr)");
  s->add_option("--localization", sw.localization, "Per-polygon error CSV path");

  RenderArgs ren;
  auto* v = app.add_subcommand("render", "Render a tessellation as SVG");
  v->add_option("input", ren.input, "Tessellation file")->required();
  v->add_option("--generators", ren.generators, "Generator overlay");
  v->add_option("--estimates", ren.estimates, "Estimate CSV overlay (from invert)");
  v->add_flag("--circles", ren.circles, "Draw largest empty circles at interior vertices");
  v->add_option("--width", ren.width, "Width in pixels");
  v->add_option("--output", ren.output, "SVG path")->required();

  GridArgs grd;
  auto* gr = app.add_subcommand("grid", "Nearest-generator label grid (growth model)");
  gr->add_option("input", grd.input, "Generator file")->required();
  gr->add_option("--resolution", grd.resolution, "Samples per side (>= 2)");
  gr->add_option("--output", grd.output, "Output path (default stdout)");

  std::vector<std::string> args;
  for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
  std::vector<std::string> forward(args.rbegin(), args.rend());
  try {
    forward = expand_config(std::move(forward));
    std::vector<std::string> reversed(forward.rbegin(), forward.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*i) return cmd_invert(inv);
    if (*c) return cmd_check(chk);
    if (*r) return cmd_roundtrip(rt);
    if (*s) return cmd_sweep(sw);
    if (*v) return cmd_render(ren);
    if (*gr) return cmd_grid(grd);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInversion;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
