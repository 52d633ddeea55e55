// SPDX-License-Identifier: Apache-2.0
//
// Forward construction of clipped planar Voronoi diagrams, plus the two
// oracles used to check everything downstream: largest empty circles at
// Voronoi vertices and the nearest-generator label grid (the terminal state of
// equal-rate growth from fixed sites).
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vorinv/geom.hpp"
#include "vorinv/tess.hpp"

namespace vorinv {

struct GeneratorSet {
  std::vector<Point2> points;
  Rect bounds;

  std::size_t size() const { return points.size(); }
  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;
};

//! Minimum pairwise distance below which generators count as duplicates.
inline constexpr double kDuplicateTolerance = 1e-9;

//! Throws on n < 2, invalid bounds, duplicates or points outside the bounds.
void validate(const GeneratorSet& g);

struct BuildOptions {
  //! Voronoi vertices closer than this are merged into one vertex.
  double merge_tolerance = 1e-9;
};

struct VoronoiDiagram {
  GeneratorSet generators;
  //! Voronoi vertices as ordinary vertices, clip-boundary crossings as
  //! dummies. An edge that crosses the region without any Voronoi vertex gets
  //! a degree-two ordinary vertex at its midpoint so it stays representable.
  Tessellation tessellation;
  //! Clipped convex cell of each generator, counterclockwise.
  std::vector<std::vector<Point2>> regions;
  //! extract_polygons(tessellation) and the generator owning each polygon.
  std::vector<Polygon> faces;
  std::vector<std::size_t> generator_of_face;
};

VoronoiDiagram build_voronoi(const GeneratorSet& g, const BuildOptions& options = {});

struct DegeneracyVerdict {
  std::vector<std::size_t> degenerate_vertices;  // ordinary vertices of degree >= 4
  bool non_degenerate() const { return degenerate_vertices.empty(); }
};
DegeneracyVerdict detect_degeneracy(const VoronoiDiagram& d);

//! Circle centered at an interior Voronoi vertex through its nearest
//! generators. Throws NotInteriorVertex for dummies and degree < 3 vertices.
Circle largest_empty_circle_at(const VoronoiDiagram& d, std::size_t vertex);

//! Generators lying on `c` within `tolerance` (relative to the radius).
std::vector<std::size_t> generators_on_circle(const GeneratorSet& g, const Circle& c,
                                              double tolerance = 1e-9);

//! Nearest-generator labels on a resolution x resolution grid of cell-center
//! samples over the bounds. Row 0 is the top (largest y) row.
struct LabelGrid {
  Rect bounds;
  std::size_t resolution = 0;
  std::vector<std::uint32_t> labels;  // row-major

  std::uint32_t at(std::size_t row, std::size_t col) const { return labels[row * resolution + col]; }
  Point2 sample_point(std::size_t row, std::size_t col) const;
  //! Diagonal of one grid cell.
  double cell_diagonal() const;
};

LabelGrid grid_growth_labels(const GeneratorSet& g, std::size_t resolution);

GeneratorSet parse_generators(std::istream& in);
GeneratorSet parse_generators(std::string_view text);
std::string serialize_generators(const GeneratorSet& g);
std::string serialize_labels(const LabelGrid& grid);

}  // namespace vorinv
