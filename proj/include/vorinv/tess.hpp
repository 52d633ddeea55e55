// SPDX-License-Identifier: Apache-2.0
//
// Tessellation data model: vertex coordinates plus contiguity lists, with
// unbounded edges terminated by dummy vertices stored at the end of the
// vertex list. Dummy vertices carry no adjacency list of their own.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vorinv/geom.hpp"

namespace vorinv {

struct Tessellation {
  std::vector<Point2> vertices;  // ordinary first, then dummy
  std::size_t n_ordinary = 0;
  std::size_t n_dummy = 0;
  std::vector<std::vector<std::size_t>> adjacency;  // one list per ordinary vertex

  std::size_t size() const { return vertices.size(); }
  bool is_dummy(std::size_t v) const { return v >= n_ordinary; }
  std::size_t degree(std::size_t v) const { return adjacency[v].size(); }

  friend bool operator==(const Tessellation&, const Tessellation&) = default;
};

//! Throws Error on any violated invariant (counts, symmetry, self loops,
//! repeated neighbors, dummy placement, non-finite coordinates).
void validate(const Tessellation& t);

//! Cyclic, counterclockwise list of vertex indices. For an unbounded polygon
//! the list starts and ends at dummy vertices and the closing side between
//! them is open (not an edge of the tessellation).
struct Polygon {
  std::vector<std::size_t> vertex_indices;
  bool is_unbounded = false;

  std::size_t size() const { return vertex_indices.size(); }
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

Tessellation parse_tessellation(std::istream& in);
Tessellation parse_tessellation(std::string_view text);
std::string serialize_tessellation(const Tessellation& t);

//! Faces of the planar subdivision, found by walking each half edge to the
//! next edge clockwise around its head (face kept on the left). The outer face
//! of a dummy-free component is dropped; a walk that passes through dummy
//! vertices is cut at each dummy into one unbounded polygon per gap.
std::vector<Polygon> extract_polygons(const Tessellation& t);

//! Polygons on either side of every edge, from the polygons' boundary order.
struct EdgeFaces {
  std::size_t u = 0;
  std::size_t v = 0;
  std::optional<std::size_t> left;   // polygon traversing u -> v
  std::optional<std::size_t> right;  // polygon traversing v -> u
};
std::vector<EdgeFaces> edge_faces(const Tessellation& t, std::span<const Polygon> polygons);

std::vector<Point2> polygon_points(const Tessellation& t, const Polygon& p);

//! Shoelace area of the polygon. Unbounded polygons are closed along the
//! boundary of `clip` (counterclockwise from the last dummy back to the
//! first) when given, otherwise by the straight chord between the dummies.
double polygon_area(const Tessellation& t, const Polygon& p,
                    const std::optional<Rect>& clip = std::nullopt);

struct DegreeVerdict {
  std::vector<std::size_t> violations;  // ordinary vertices with degree != 3
  bool all_degree_three() const { return violations.empty(); }
};
DegreeVerdict vertex_degree_check(const Tessellation& t);

//! Gaussian displacement (std `sigma` per coordinate) of every ordinary
//! vertex; dummies and adjacency are untouched. Deterministic in `seed`.
Tessellation perturb_vertices(const Tessellation& t, double sigma, std::uint64_t seed);

//! Shortest round-trip decimal text for a double.
std::string format_real(double value);

}  // namespace vorinv
