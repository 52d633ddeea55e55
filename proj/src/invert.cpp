// SPDX-License-Identifier: Apache-2.0
#include "vorinv/invert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vorinv/detail/parallel.hpp"
#include "vorinv/error.hpp"

namespace vorinv {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::AlgI: return "alg1";
    case Method::AlgII: return "alg2";
    case Method::AlgIII: return "alg3";
    case Method::LeastSquares: return "lsq";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view tag) {
  for (Method m : kAllMethods) {
    if (to_string(m) == tag) return m;
  }
  return std::nullopt;
}

bool GeneratorEstimate::complete() const {
  return std::all_of(per_polygon.begin(), per_polygon.end(),
                     [](const PolygonDiagnostics& d) { return !d.failure; });
}

double bounding_diagonal(const Tessellation& t) {
  if (t.vertices.empty()) return 0.0;
  double x0 = t.vertices[0].x, x1 = x0, y0 = t.vertices[0].y, y1 = y0;
  for (const Point2& p : t.vertices) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return std::hypot(x1 - x0, y1 - y0);
}

// ---------------------------------------------------------------------------
// Rays

GeneratorRay generator_ray(const Tessellation& t, const Polygon& polygon, std::size_t vertex_index,
                           std::size_t polygon_index) {
  const auto& idx = polygon.vertex_indices;
  const auto it = std::find(idx.begin(), idx.end(), vertex_index);
  if (it == idx.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "vertex " + std::to_string(vertex_index) + " is not on polygon " +
                    std::to_string(polygon_index),
                vertex_index);
  }
  const auto degenerate = [&](const std::string& why) {
    return Error(ErrorKind::DegenerateVertex, "vertex " + std::to_string(vertex_index) + ": " + why,
                 vertex_index);
  };
  if (t.is_dummy(vertex_index)) throw degenerate("dummy vertex");
  if (t.degree(vertex_index) != 3) throw degenerate("degree " + std::to_string(t.degree(vertex_index)));

  const std::size_t k = static_cast<std::size_t>(it - idx.begin());
  const std::size_t m = idx.size();
  if (polygon.is_unbounded && (k == 0 || k + 1 == m)) throw degenerate("open end of polygon");
  const std::size_t prev = idx[(k + m - 1) % m];
  const std::size_t next = idx[(k + 1) % m];
  std::size_t third = SIZE_MAX;
  for (std::size_t j : t.adjacency[vertex_index]) {
    if (j != prev && j != next) third = j;
  }
  if (prev == next || third == SIZE_MAX) throw degenerate("polygon boundary does not use two distinct edges");

  const Point2 q = t.vertices[vertex_index];
  const Point2 to_next = t.vertices[next] - q;
  const Point2 to_prev = t.vertices[prev] - q;
  const Point2 to_third = t.vertices[third] - q;
  if (norm(to_next) == 0.0 || norm(to_prev) == 0.0 || norm(to_third) == 0.0) {
    throw degenerate("zero-length incident edge");
  }
  // The polygon's sector runs counterclockwise from `next` to `prev`.
  const double own = ccw_angle(to_next, to_prev);
  const double after_prev = ccw_angle(to_prev, to_third);   // sector not touching `next`
  const double before_next = ccw_angle(to_third, to_next);  // sector not touching `prev`
  if (own == 0.0 || after_prev == 0.0 || before_next == 0.0 ||
      std::abs(own + after_prev + before_next - 2.0 * kPi) > 1e-9) {
    throw degenerate("incident edge directions are not distinct");
  }
  if (after_prev >= kPi || before_next >= kPi) {
    throw Error(ErrorKind::SectorAngleOverflow,
                "vertex " + std::to_string(vertex_index) + " has a neighboring sector of pi or more",
                vertex_index);
  }
  const Point2 dir = rotate(normalized(to_next), kPi - after_prev);
  return {polygon_index, vertex_index, Ray{q, normalized(dir)}};
}

namespace {

struct PolygonFailure {
  ErrorKind kind;
  std::string message;
};

// Rays from every usable vertex of a polygon, in boundary order.
std::vector<GeneratorRay> usable_rays(const Tessellation& t, const Polygon& p, std::size_t pi,
                                      std::size_t& n_unusable) {
  std::vector<GeneratorRay> rays;
  n_unusable = 0;
  for (std::size_t v : p.vertex_indices) {
    if (t.is_dummy(v) || t.degree(v) != 3) {
      ++n_unusable;
      continue;
    }
    try {
      rays.push_back(generator_ray(t, p, v, pi));
    } catch (const Error&) {
      ++n_unusable;
    }
  }
  return rays;
}

double max_pairwise_distance(const std::vector<PairCandidate>& c) {
  double s = 0.0;
  for (std::size_t a = 0; a < c.size(); ++a) {
    for (std::size_t b = a + 1; b < c.size(); ++b) s = std::max(s, distance(c[a].point, c[b].point));
  }
  return s;
}

std::optional<Point2> ray_line_fit(const std::vector<GeneratorRay>& rays) {
  if (rays.size() < 2) return std::nullopt;
  // Sum of (I - d d^T) over the rays, applied to p and to the origins.
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (const auto& r : rays) {
    const Point2 d = r.ray.direction;
    const double m11 = 1 - d.x * d.x, m12 = -d.x * d.y, m22 = 1 - d.y * d.y;
    const Point2 o = r.ray.origin;
    a11 += m11;
    a12 += m12;
    a22 += m22;
    b1 += m11 * o.x + m12 * o.y;
    b2 += m12 * o.x + m22 * o.y;
  }
  const double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 1e-12 * (a11 + a22) * (a11 + a22))) return std::nullopt;
  return Point2{(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};
}

// Sum of intersection displacements when each ray is turned by +-epsilon.
std::optional<double> stability_delta(const Ray& a, const Ray& b, Point2 p, double epsilon) {
  double delta = 0.0;
  for (double s : {epsilon, -epsilon}) {
    const Ray ta{a.origin, rotate(a.direction, s)};
    const Ray tb{b.origin, rotate(b.direction, s)};
    const auto pa = ray_intersection(ta, b);
    const auto pb = ray_intersection(a, tb);
    if (!pa || !pb) return std::nullopt;
    delta += distance(*pa, p) + distance(*pb, p);
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) return std::nullopt;
  return delta;
}

using PolygonSolver = std::optional<PolygonFailure> (*)(const Tessellation&, const Polygon&,
                                                        std::size_t, const InvertOptions&,
                                                        PolygonDiagnostics&, Point2&);

std::optional<PolygonFailure> too_few(std::size_t pi) {
  return PolygonFailure{ErrorKind::InsufficientVertices,
                        "polygon " + std::to_string(pi) + " has fewer than two usable vertices"};
}

std::optional<PolygonFailure> solve_alg1(const Tessellation& t, const Polygon& p, std::size_t pi,
                                         const InvertOptions&, PolygonDiagnostics& diag,
                                         Point2& out) {
  // First two rays in boundary order; if they miss, bring in later rays.
  // Vertices past the first usable pair are never looked at.
  for (std::size_t v : p.vertex_indices) {
    if (t.is_dummy(v) || t.degree(v) != 3) {
      ++diag.n_unusable;
      continue;
    }
    try {
      diag.rays.push_back(generator_ray(t, p, v, pi));
    } catch (const Error&) {
      ++diag.n_unusable;
      continue;
    }
    const std::size_t b = diag.rays.size() - 1;
    for (std::size_t a = 0; a < b; ++a) {
      ++diag.n_pairs;
      if (auto hit = ray_intersection(diag.rays[a].ray, diag.rays[b].ray)) {
        diag.candidates.push_back({a, b, *hit, 0.0, 1.0});
        diag.ray_line_fit = ray_line_fit(diag.rays);
        out = *hit;
        return std::nullopt;
      }
      ++diag.n_dropped;
    }
  }
  if (diag.rays.size() < 2) return too_few(pi);
  return PolygonFailure{ErrorKind::AllRaysParallel,
                        "no pair of rays in polygon " + std::to_string(pi) + " intersects"};
}

std::optional<PolygonFailure> solve_alg2(const Tessellation& t, const Polygon& p, std::size_t pi,
                                         const InvertOptions&, PolygonDiagnostics& diag,
                                         Point2& out) {
  diag.rays = usable_rays(t, p, pi, diag.n_unusable);
  diag.ray_line_fit = ray_line_fit(diag.rays);
  if (diag.rays.size() < 2) return too_few(pi);
  for (std::size_t a = 0; a < diag.rays.size(); ++a) {
    for (std::size_t b = a + 1; b < diag.rays.size(); ++b) {
      ++diag.n_pairs;
      if (auto hit = ray_intersection(diag.rays[a].ray, diag.rays[b].ray)) {
        diag.candidates.push_back({a, b, *hit, 0.0, 0.0});
      } else {
        ++diag.n_dropped;
      }
    }
  }
  if (diag.candidates.empty()) {
    return PolygonFailure{ErrorKind::NoUsableIntersections,
                          "no ray pair in polygon " + std::to_string(pi) + " intersects"};
  }
  const double w = 1.0 / static_cast<double>(diag.candidates.size());
  Point2 mean{0, 0};
  for (auto& c : diag.candidates) {
    c.weight = w;
    mean += w * c.point;
  }
  diag.spread = max_pairwise_distance(diag.candidates);
  out = mean;
  return std::nullopt;
}

std::optional<PolygonFailure> solve_alg3(const Tessellation& t, const Polygon& p, std::size_t pi,
                                         const InvertOptions& options, PolygonDiagnostics& diag,
                                         Point2& out) {
  diag.rays = usable_rays(t, p, pi, diag.n_unusable);
  diag.ray_line_fit = ray_line_fit(diag.rays);
  if (diag.rays.size() < 2) return too_few(pi);
  double inv_sum = 0.0;
  for (std::size_t a = 0; a < diag.rays.size(); ++a) {
    for (std::size_t b = a + 1; b < diag.rays.size(); ++b) {
      ++diag.n_pairs;
      const Ray& ra = diag.rays[a].ray;
      const Ray& rb = diag.rays[b].ray;
      const auto hit = ray_intersection(ra, rb);
      const auto delta = hit ? stability_delta(ra, rb, *hit, options.epsilon) : std::nullopt;
      if (!delta) {
        ++diag.n_dropped;
        continue;
      }
      diag.candidates.push_back({a, b, *hit, *delta, 0.0});
      inv_sum += 1.0 / *delta;
    }
  }
  if (diag.candidates.empty()) {
    return PolygonFailure{ErrorKind::NoUsableIntersections,
                          "no stable ray pair in polygon " + std::to_string(pi)};
  }
  Point2 est{0, 0};
  for (auto& c : diag.candidates) {
    c.weight = (1.0 / c.delta) / inv_sum;
    est += c.weight * c.point;
  }
  diag.spread = max_pairwise_distance(diag.candidates);
  out = est;
  return std::nullopt;
}

GeneratorEstimate invert_local(const Tessellation& t, std::span<const Polygon> polygons,
                               Method method, PolygonSolver solver, const InvertOptions& options) {
  GeneratorEstimate est;
  est.method = method;
  const std::size_t n = polygons.size();
  est.positions.assign(n, Point2{std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()});
  est.per_polygon.resize(n);
  std::vector<std::optional<PolygonFailure>> failures(n);
  detail::parallel_for(n, [&](std::size_t i) {
    failures[i] = solver(t, polygons[i], i, options, est.per_polygon[i], est.positions[i]);
  }, 2048);
  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    if (options.strict) throw Error(failures[i]->kind, failures[i]->message, i);
    est.positions[i] = {std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN()};
    est.per_polygon[i].failure =
        std::string(to_string(failures[i]->kind)) + ": " + failures[i]->message;
    est.warnings.push_back(*est.per_polygon[i].failure);
  }
  return est;
}

}  // namespace

GeneratorEstimate invert_least_squares(const Tessellation& t, std::span<const Polygon> polygons,
                                       const InvertOptions& options);

namespace {

GeneratorEstimate invert_validated(const Tessellation& t, std::span<const Polygon> polygons,
                                   Method method, const InvertOptions& options) {
  if (method == Method::AlgIII && !(options.epsilon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be > 0");
  }
  switch (method) {
    case Method::AlgI: return invert_local(t, polygons, method, solve_alg1, options);
    case Method::AlgII: return invert_local(t, polygons, method, solve_alg2, options);
    case Method::AlgIII: return invert_local(t, polygons, method, solve_alg3, options);
    case Method::LeastSquares: return invert_least_squares(t, polygons, options);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method");
}

}  // namespace

GeneratorEstimate invert(const Tessellation& t, std::span<const Polygon> polygons, Method method,
                         const InvertOptions& options) {
  validate(t);
  return invert_validated(t, polygons, method, options);
}

GeneratorEstimate invert(const Tessellation& t, Method method, const InvertOptions& options) {
  const std::vector<Polygon> polygons = extract_polygons(t);  // validates
  return invert_validated(t, polygons, method, options);
}

GeneratorEstimate invert_alg1(const Tessellation& t, const InvertOptions& options) {
  return invert(t, Method::AlgI, options);
}
GeneratorEstimate invert_alg2(const Tessellation& t, const InvertOptions& options) {
  return invert(t, Method::AlgII, options);
}
GeneratorEstimate invert_alg3(const Tessellation& t, const InvertOptions& options) {
  return invert(t, Method::AlgIII, options);
}
GeneratorEstimate invert_least_squares(const Tessellation& t, const InvertOptions& options) {
  return invert(t, Method::LeastSquares, options);
}

// ---------------------------------------------------------------------------
// Recognition

namespace {

bool is_convex(const Tessellation& t, const Polygon& p) {
  const auto& idx = p.vertex_indices;
  const std::size_t m = idx.size();
  if (m < 3) return true;
  const std::size_t first = p.is_unbounded ? 1 : 0;
  const std::size_t last = p.is_unbounded ? m - 1 : m;  // exclusive
  for (std::size_t k = first; k < last; ++k) {
    const Point2 a = t.vertices[idx[(k + m - 1) % m]];
    const Point2 b = t.vertices[idx[k]];
    const Point2 c = t.vertices[idx[(k + 1) % m]];
    if (!(cross(b - a, c - b) > 0.0)) return false;
  }
  return true;
}

}  // namespace

RecognitionVerdict recognize_voronoi(const Tessellation& t, double tolerance) {
  if (!(tolerance >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be >= 0");
  const DegreeVerdict degrees = vertex_degree_check(t);
  if (!degrees.all_degree_three()) {
    std::string list;
    for (std::size_t v : degrees.violations) list += (list.empty() ? "" : " ") + std::to_string(v);
    throw Error(ErrorKind::DegenerateVertex, "vertices without degree three: " + list,
                degrees.violations.front());
  }
  RecognitionVerdict verdict;
  verdict.tolerance_used = tolerance;
  std::vector<Polygon> polygons;
  try {
    polygons = extract_polygons(t);
  } catch (const Error& e) {
    // Crossing edges: no planar subdivision, so certainly not a Voronoi diagram.
    if (e.kind() != ErrorKind::NonPlanarEmbedding) throw;
    verdict.planar = false;
    return verdict;
  }
  verdict.per_polygon_spread.resize(polygons.size(), 0.0);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  for (std::size_t pi = 0; pi < polygons.size(); ++pi) {
    const Polygon& p = polygons[pi];
    double& spread = verdict.per_polygon_spread[pi];
    if (!is_convex(t, p)) {
      verdict.nonconvex_polygons.push_back(pi);
      spread = kInf;
      continue;
    }
    const auto& idx = p.vertex_indices;
    const std::size_t m = idx.size();
    const std::size_t n_sides = p.is_unbounded ? m - 1 : m;
    std::vector<Point2> candidates;
    for (std::size_t k = 0; k < n_sides && spread < kInf; ++k) {
      const std::size_t u = idx[k];
      const std::size_t v = idx[(k + 1) % m];
      if (t.is_dummy(u) || t.is_dummy(v)) continue;
      try {
        const Ray ru = generator_ray(t, p, u, pi).ray;
        const Ray rv = generator_ray(t, p, v, pi).ray;
        if (auto hit = ray_intersection(ru, rv)) {
          candidates.push_back(*hit);
        } else {
          spread = kInf;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SectorAngleOverflow) throw;
        spread = kInf;
      }
    }
    for (std::size_t a = 0; a < candidates.size() && spread < kInf; ++a) {
      for (std::size_t b = a + 1; b < candidates.size(); ++b) {
        spread = std::max(spread, distance(candidates[a], candidates[b]));
      }
    }
  }
  for (std::size_t pi = 0; pi < polygons.size(); ++pi) {
    if (!(verdict.per_polygon_spread[pi] <= tolerance)) verdict.failing_polygons.push_back(pi);
  }
  verdict.is_voronoi = verdict.failing_polygons.empty();
  return verdict;
}

}  // namespace vorinv
