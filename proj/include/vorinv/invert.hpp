// SPDX-License-Identifier: Apache-2.0
//
// Generator recovery from a tessellation.
//
// At a degree-three Voronoi vertex the generator of each incident cell lies on
// a ray leaving the vertex into that cell. Measured from one of the cell's two
// boundary edges, the ray's angle is pi minus the sector angle of the cell that
// does not touch that edge. Intersecting two such rays of one cell recovers its
// generator; the three ray algorithms differ in which intersections they use
// and how they combine them. The least-squares method instead couples
// neighboring cells through the perpendicular-bisector relation on every
// shared edge.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vorinv/geom.hpp"
#include "vorinv/tess.hpp"

namespace vorinv {

enum class Method { AlgI, AlgII, AlgIII, LeastSquares };

//! CLI/CSV tag: alg1, alg2, alg3, lsq.
std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view tag);
inline constexpr Method kAllMethods[] = {Method::AlgI, Method::AlgII, Method::AlgIII,
                                         Method::LeastSquares};

struct GeneratorRay {
  std::size_t polygon_index = 0;
  std::size_t vertex_index = 0;
  Ray ray;
};

//! Ray from `vertex_index` (an ordinary degree-three vertex of `polygon`)
//! toward the polygon's generator.
//! Throws DegenerateVertex or SectorAngleOverflow (a non-polygon sector of
//! pi or more: no Voronoi vertex looks like that).
GeneratorRay generator_ray(const Tessellation& t, const Polygon& polygon, std::size_t vertex_index,
                           std::size_t polygon_index = 0);

//! One ray-pair intersection inside a polygon. Ray indices refer to
//! PolygonDiagnostics::rays.
struct PairCandidate {
  std::size_t ray_a = 0;
  std::size_t ray_b = 0;
  Point2 point;
  double delta = 0.0;   // AlgIII stability measure (sum of perturbed displacements)
  double weight = 0.0;  // contribution to the polygon's estimate
};

struct PolygonDiagnostics {
  std::vector<GeneratorRay> rays;
  std::vector<PairCandidate> candidates;
  double spread = 0.0;           // max pairwise distance among candidates
  std::size_t n_pairs = 0;       // ray pairs examined
  std::size_t n_dropped = 0;     // pairs with no usable intersection
  std::size_t n_unusable = 0;    // polygon vertices that yielded no ray
  //! Point minimizing the summed squared distance to the rays' lines.
  std::optional<Point2> ray_line_fit;
  //! Set only in non-strict mode when this polygon could not be inverted.
  std::optional<std::string> failure;
};

struct LeastSquaresDiagnostics {
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  double residual_norm = 0.0;
  double condition_number = 0.0;
  bool rank_deficient = false;
  bool ill_conditioned = false;
};

struct GeneratorEstimate {
  Method method = Method::AlgI;
  std::vector<Point2> positions;  // one per polygon
  std::vector<PolygonDiagnostics> per_polygon;
  std::optional<LeastSquaresDiagnostics> least_squares;
  std::vector<std::string> warnings;

  bool complete() const;
};

//! A generator position known in advance (least squares only).
struct KnownGenerator {
  std::size_t polygon = 0;
  Point2 position;
};

struct InvertOptions {
  //! AlgIII rotation applied to each ray direction, radians.
  double epsilon = 1e-4;
  //! Strict: the first failing polygon throws. Otherwise failing polygons
  //! get a NaN position and PolygonDiagnostics::failure.
  bool strict = true;
  //! Least squares: singular values below this fraction of the largest
  //! count as zero when determining rank.
  double rank_tolerance = 1e-10;
  //! Least squares: warn when the condition number exceeds this.
  double condition_warning = 1e8;
  //! Least squares: extra rows x_k = px, y_k = py pinning these polygons.
  std::vector<KnownGenerator> known;
};

GeneratorEstimate invert_alg1(const Tessellation& t, const InvertOptions& options = {});
GeneratorEstimate invert_alg2(const Tessellation& t, const InvertOptions& options = {});
GeneratorEstimate invert_alg3(const Tessellation& t, const InvertOptions& options = {});
GeneratorEstimate invert_least_squares(const Tessellation& t, const InvertOptions& options = {});
GeneratorEstimate invert(const Tessellation& t, Method method, const InvertOptions& options = {});

//! Same, with the polygon structure supplied by the caller (e.g. the faces of
//! the unperturbed diagram when inverting a noisy copy).
GeneratorEstimate invert(const Tessellation& t, std::span<const Polygon> polygons, Method method,
                         const InvertOptions& options = {});

struct RecognitionVerdict {
  bool is_voronoi = false;
  std::vector<double> per_polygon_spread;  // +inf where no candidate could be formed
  double tolerance_used = 0.0;
  std::vector<std::size_t> failing_polygons;
  std::vector<std::size_t> nonconvex_polygons;  // subset of failing_polygons
  //! False when edges cross; the verdict is then negative with no polygons.
  bool planar = true;
};

//! Voronoi-ness test for a tessellation whose vertices all have degree three:
//! every polygon's edge-wise ray intersections must agree within
//! `tolerance`. Throws DegenerateVertex listing vertices of other degree.
//! Non-convex polygons and non-planar embeddings fail the test.
RecognitionVerdict recognize_voronoi(const Tessellation& t, double tolerance);

//! Diagonal of the bounding box of all vertices; the scale used for default
//! tolerances.
double bounding_diagonal(const Tessellation& t);

}  // namespace vorinv
