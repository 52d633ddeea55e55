// SPDX-License-Identifier: Apache-2.0
#include "vorinv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <tuple>

#include "vorinv/detail/parallel.hpp"
#include "vorinv/detail/point_index.hpp"
#include "vorinv/error.hpp"

namespace vorinv {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

VoronoiDiagram resynthesize(const GeneratorEstimate& estimate, const Rect& bounds,
                            const BuildOptions& options) {
  GeneratorSet g{estimate.positions, bounds};
  const detail::PointIndex index(g.points, &bounds);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    if (!is_finite(g.points[i])) {
      throw Error(ErrorKind::InvalidArgument, "estimate " + std::to_string(i) + " is not finite", i);
    }
    index.for_each_within(g.points[i], kDuplicateTolerance, [&](std::size_t j) {
      if (j != i) {
        throw Error(ErrorKind::DuplicateEstimates,
                    "estimates " + std::to_string(std::min(i, j)) + " and " +
                        std::to_string(std::max(i, j)) + " coincide",
                    std::min(i, j));
      }
    });
  }
  // Noisy estimates of boundary cells may fall outside the region; grow it
  // just enough to hold them.
  const double margin = 0.01 * bounds.diagonal();
  for (const Point2& p : g.points) {
    if (p.x <= g.bounds.xmin) g.bounds.xmin = p.x - margin;
    if (p.x >= g.bounds.xmax) g.bounds.xmax = p.x + margin;
    if (p.y <= g.bounds.ymin) g.bounds.ymin = p.y - margin;
    if (p.y >= g.bounds.ymax) g.bounds.ymax = p.y + margin;
  }
  return build_voronoi(g, options);
}

double default_match_radius(double sigma, double diagonal) {
  return sigma > 0.0 ? 5.0 * sigma : 0.01 * diagonal;
}

ErrorReport vertex_rms_error(const Tessellation& a, const Tessellation& b, double match_radius) {
  ErrorReport report;
  const std::size_t na = a.n_ordinary;
  const std::size_t nb = b.n_ordinary;
  std::vector<Point2> pb(b.vertices.begin(), b.vertices.begin() + static_cast<std::ptrdiff_t>(nb));
  struct Candidate {
    double d;
    std::size_t i, j;
  };
  std::vector<Candidate> cands;
  if (nb > 0 && match_radius >= 0.0) {
    const detail::PointIndex index(pb);
    for (std::size_t i = 0; i < na; ++i) {
      index.for_each_within(a.vertices[i], match_radius, [&](std::size_t j) {
        cands.push_back({distance(a.vertices[i], pb[j]), i, j});
      });
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.d, x.i, x.j) < std::tie(y.d, y.i, y.j);
  });
  std::vector<bool> used_a(na, false), used_b(nb, false);
  double sum2 = 0.0;
  std::size_t matched = 0;
  for (const Candidate& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    sum2 += c.d * c.d;
    ++matched;
  }
  const std::size_t denom = std::max(na, nb);
  report.matched_fraction = denom ? static_cast<double>(matched) / static_cast<double>(denom) : 1.0;
  if (matched == 0) {
    report.vertex_rms = kNaN;
    report.no_matches = true;
    report.status = "NoMatches";
  } else {
    report.vertex_rms = std::sqrt(sum2 / static_cast<double>(matched));
  }
  return report;
}

std::size_t outlier_vertex(const Tessellation& t, std::uint64_t seed) {
  if (t.n_ordinary == 0) throw Error(ErrorKind::InvalidArgument, "no ordinary vertices to displace");
  std::mt19937_64 rng(seed);
  return std::uniform_int_distribution<std::size_t>(0, t.n_ordinary - 1)(rng);
}

namespace {

Tessellation apply_noise(const Tessellation& t, double sigma, std::uint64_t seed, NoiseModel model) {
  if (model == NoiseModel::Gaussian) return perturb_vertices(t, sigma, seed);
  Tessellation out = t;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  const std::size_t v = std::uniform_int_distribution<std::size_t>(0, t.n_ordinary - 1)(rng);
  const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng);
  out.vertices[v] = out.vertices[v] + sigma * Point2{std::cos(angle), std::sin(angle)};
  return out;
}

ErrorReport run_row(const RoundtripInput& in, double sigma, std::uint64_t seed, Method method,
                    const SweepOptions& options) {
  ErrorReport row;
  row.sigma = sigma;
  row.seed = seed;
  row.method = method;
  row.vertex_rms = kNaN;
  std::vector<std::string> problems;

  const Tessellation noisy = apply_noise(in.tessellation, sigma, seed, options.noise);
  InvertOptions inv = options.invert;
  inv.strict = false;
  GeneratorEstimate est;
  try {
    est = invert(noisy, in.faces, method, inv);
  } catch (const Error& e) {
    row.status = std::string(to_string(e.kind()));
    return row;
  }

  std::size_t failed = 0;
  for (const Point2& p : est.positions) failed += is_finite(p) ? 0 : 1;
  if (in.truth_of_face) {
    const auto& truth = *in.truth_of_face;
    row.per_polygon_error.resize(est.positions.size());
    double sum2 = 0.0;
    for (std::size_t f = 0; f < est.positions.size(); ++f) {
      if (!is_finite(est.positions[f])) {
        row.per_polygon_error[f] = kNaN;
        continue;
      }
      const double e = distance(est.positions[f], truth[f]);
      row.per_polygon_error[f] = e;
      sum2 += e * e;
    }
    if (failed < est.positions.size()) {
      row.generator_rms = std::sqrt(sum2 / static_cast<double>(est.positions.size() - failed));
    }
  }
  if (failed > 0) problems.push_back("failed_polygons=" + std::to_string(failed));

  if (failed == 0) {
    try {
      const VoronoiDiagram re = resynthesize(est, in.bounds, options.build);
      const double radius = default_match_radius(
          options.noise == NoiseModel::Gaussian ? sigma : 0.0, in.bounds.diagonal());
      const ErrorReport vr = vertex_rms_error(re.tessellation, in.tessellation, radius);
      row.vertex_rms = vr.vertex_rms;
      row.matched_fraction = vr.matched_fraction;
      row.no_matches = vr.no_matches;
      if (vr.no_matches) problems.push_back("NoMatches");
    } catch (const Error& e) {
      problems.push_back("resynth:" + std::string(to_string(e.kind())));
    }
  }
  if (!problems.empty()) {
    row.status.clear();
    for (const auto& p : problems) row.status += (row.status.empty() ? "" : ";") + p;
  }
  return row;
}

}  // namespace

RoundtripInput roundtrip_input(const VoronoiDiagram& d) {
  RoundtripInput in;
  in.tessellation = d.tessellation;
  in.faces = d.faces;
  in.bounds = d.generators.bounds;
  std::vector<Point2> truth;
  truth.reserve(d.faces.size());
  for (std::size_t g : d.generator_of_face) truth.push_back(d.generators.points[g]);
  in.truth_of_face = std::move(truth);
  return in;
}

RoundtripInput roundtrip_input(const Tessellation& t) {
  RoundtripInput in;
  in.tessellation = t;
  in.faces = extract_polygons(t);
  if (t.vertices.empty()) throw Error(ErrorKind::InvalidArgument, "empty tessellation");
  Rect r{t.vertices[0].x, t.vertices[0].y, t.vertices[0].x, t.vertices[0].y};
  for (const Point2& p : t.vertices) {
    r.xmin = std::min(r.xmin, p.x);
    r.xmax = std::max(r.xmax, p.x);
    r.ymin = std::min(r.ymin, p.y);
    r.ymax = std::max(r.ymax, p.y);
  }
  in.bounds = r;
  return in;
}

std::vector<ErrorReport> roundtrip_sweep(const RoundtripInput& input, std::span<const double> sigmas,
                                         std::span<const std::uint64_t> seeds,
                                         std::span<const Method> methods,
                                         const SweepOptions& options) {
  if (sigmas.empty() || seeds.empty() || methods.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sweep needs at least one sigma, seed and method");
  }
  for (double s : sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw Error(ErrorKind::InvalidArgument, "sigma must be >= 0");
  }
  const std::size_t n_rows = sigmas.size() * seeds.size() * methods.size();
  std::vector<ErrorReport> rows(n_rows);
  const auto job = [&](std::size_t r) {
    const std::size_t m = r % methods.size();
    const std::size_t s = (r / methods.size()) % seeds.size();
    const std::size_t q = r / (methods.size() * seeds.size());
    rows[r] = run_row(input, sigmas[q], seeds[s], methods[m], options);
  };
  if (options.parallel) {
    detail::parallel_for(n_rows, job, 2);
  } else {
    for (std::size_t r = 0; r < n_rows; ++r) job(r);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ErrorReport& a, const ErrorReport& b) {
    return std::tuple(a.sigma, a.seed, static_cast<int>(a.method)) <
           std::tuple(b.sigma, b.seed, static_cast<int>(b.method));
  });
  return rows;
}

std::vector<ErrorReport> noise_sweep(const GeneratorSet& g, std::span<const double> sigmas,
                                     std::span<const std::uint64_t> seeds,
                                     std::span<const Method> methods, const SweepOptions& options) {
  return roundtrip_sweep(roundtrip_input(build_voronoi(g, options.build)), sigmas, seeds, methods,
                         options);
}

std::string reports_to_csv(std::span<const ErrorReport> reports) {
  std::string out = "sigma,seed,method,generator_rms,vertex_rms,matched_fraction,status\n";
  for (const ErrorReport& r : reports) {
    out += format_real(r.sigma) + "," + std::to_string(r.seed) + "," + std::string(to_string(r.method)) +
           "," + (r.generator_rms ? format_real(*r.generator_rms) : std::string()) + "," +
           (std::isnan(r.vertex_rms) ? std::string() : format_real(r.vertex_rms)) + "," +
           format_real(r.matched_fraction) + "," + r.status + "\n";
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<MethodSummary> summarize(std::span<const ErrorReport> reports) {
  struct Group {
    MethodSummary s;
    std::vector<double> gen, vert;
  };
  std::vector<Group> groups;
  for (const ErrorReport& r : reports) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.s.sigma == r.sigma && g.s.method == r.method;
    });
    if (it == groups.end()) {
      groups.push_back({MethodSummary{r.sigma, r.method}, {}, {}});
      it = groups.end() - 1;
    }
    ++it->s.rows;
    // Polygon-level failures are reported in the status; the RMS covers the
    // polygons that were inverted.
    const bool gen_ok = r.generator_rms.has_value();
    if (!r.ok()) ++it->s.failed;
    it->gen.push_back(gen_ok ? *r.generator_rms : kInf);
    if (!std::isnan(r.vertex_rms)) it->vert.push_back(r.vertex_rms);
  }
  std::vector<MethodSummary> out;
  for (auto& g : groups) {
    g.s.median_generator_rms = median(g.gen);
    g.s.median_vertex_rms = median(g.vert);
    out.push_back(g.s);
  }
  return out;
}

std::string summary_table(std::span<const MethodSummary> summary) {
  std::string out = "sigma         method  rows  failed  median_generator_rms  median_vertex_rms\n";
  char buf[256];
  for (const auto& s : summary) {
    std::snprintf(buf, sizeof(buf), "%-13.6g %-7s %5zu %7zu  %20.6e  %17.6e\n", s.sigma,
                  std::string(to_string(s.method)).c_str(), s.rows, s.failed, s.median_generator_rms,
                  s.median_vertex_rms);
    out += buf;
  }
  return out;
}

}  // namespace vorinv
