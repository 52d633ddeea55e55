// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "vorinv/error.hpp"
#include "vorinv/forward.hpp"

namespace vorinv {
namespace {

using testing::random_generators;

const GeneratorSet kThree{{{0, 0}, {2, 0}, {0, 2}}, {-3, -3, 3, 3}};
const GeneratorSet kSquare{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {-1, -1, 2, 2}};

ErrorKind build_error(const GeneratorSet& g) {
  try {
    build_voronoi(g);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::FormatError;
}

std::vector<std::size_t> interior_vertices(const Tessellation& t) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < t.n_ordinary; ++v) {
    if (t.degree(v) >= 3) out.push_back(v);
  }
  return out;
}

TEST(BuildVoronoi, TwoGenerators) {
  const auto d = build_voronoi({{{0, 1}, {2, 1}}, {-1, -1, 3, 3}});
  const Tessellation& t = d.tessellation;
  ASSERT_EQ(d.faces.size(), 2u);
  // Every finite vertex lies on x = 1.
  for (const Point2& v : t.vertices) EXPECT_NEAR(v.x, 1.0, 1e-12);
  EXPECT_EQ(t.n_dummy, 2u);
}

TEST(BuildVoronoi, ThreeGeneratorsOneInteriorVertex) {
  const auto d = build_voronoi(kThree);
  const auto inner = interior_vertices(d.tessellation);
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_NEAR(d.tessellation.vertices[inner[0]].x, 1.0, 1e-12);
  EXPECT_NEAR(d.tessellation.vertices[inner[0]].y, 1.0, 1e-12);
  EXPECT_EQ(d.tessellation.n_dummy, 3u);
}

// Oracle: every vertex is equidistant from the generators of all cells that
// meet there, and no generator is closer.
TEST(BuildVoronoi, DistanceEquality) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = random_generators(20, seed);
    const auto d = build_voronoi(g);
    const Tessellation& t = d.tessellation;
    std::vector<std::vector<std::size_t>> cells_at(t.size());
    for (std::size_t f = 0; f < d.faces.size(); ++f) {
      for (std::size_t v : d.faces[f].vertex_indices) cells_at[v].push_back(d.generator_of_face[f]);
    }
    for (std::size_t v = 0; v < t.size(); ++v) {
      double nearest = INFINITY;
      for (const Point2& p : g.points) nearest = std::min(nearest, distance(p, t.vertices[v]));
      for (std::size_t c : cells_at[v]) {
        EXPECT_NEAR(distance(g.points[c], t.vertices[v]), nearest, 1e-9);
      }
    }
  }
}

TEST(BuildVoronoi, GeneratorInsideOwnCell) {
  const auto g = random_generators(60, 4);
  const auto d = build_voronoi(g);
  ASSERT_EQ(d.regions.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& ring = d.regions[i];
    for (std::size_t k = 0; k < ring.size(); ++k) {
      EXPECT_GT(cross(ring[(k + 1) % ring.size()] - ring[k], g.points[i] - ring[k]), 0.0);
    }
  }
}

TEST(BuildVoronoi, EdgesOnBisectors) {
  const auto g = random_generators(30, 8);
  const auto d = build_voronoi(g);
  const auto edges = edge_faces(d.tessellation, d.faces);
  for (const auto& e : edges) {
    if (!e.left || !e.right) continue;
    const Point2 a = g.points[d.generator_of_face[*e.left]];
    const Point2 b = g.points[d.generator_of_face[*e.right]];
    for (std::size_t v : {e.u, e.v}) {
      const Point2 q = d.tessellation.vertices[v];
      EXPECT_NEAR(distance(q, a), distance(q, b), 1e-9);
    }
  }
}

TEST(BuildVoronoi, DummiesOnBoundary) {
  const auto g = random_generators(30, 2, {-1, -2, 4, 1});
  const auto t = build_voronoi(g).tessellation;
  for (std::size_t v = t.n_ordinary; v < t.size(); ++v) {
    const Point2 p = t.vertices[v];
    const double gap = std::min({std::abs(p.x - g.bounds.xmin), std::abs(p.x - g.bounds.xmax),
                                 std::abs(p.y - g.bounds.ymin), std::abs(p.y - g.bounds.ymax)});
    EXPECT_LT(gap, 1e-12);
  }
}

TEST(BuildVoronoi, Deterministic) {
  const auto g = random_generators(500, 1);
  EXPECT_EQ(serialize_tessellation(build_voronoi(g).tessellation),
            serialize_tessellation(build_voronoi(g).tessellation));
}

TEST(BuildVoronoi, InvalidSets) {
  EXPECT_EQ(build_error({{{0.5, 0.5}}, {0, 0, 1, 1}}), ErrorKind::InvalidArgument);
  EXPECT_EQ(build_error({{{0.5, 0.5}, {0.5, 0.5 + 1e-12}}, {0, 0, 1, 1}}),
            ErrorKind::DuplicateGenerators);
  EXPECT_EQ(build_error({{{0.5, 0.5}, {1.0, 0.5}}, {0, 0, 1, 1}}),
            ErrorKind::GeneratorOutsideBounds);
  EXPECT_EQ(build_error({{{0.5, 0.5}, {0.2, 0.5}}, {1, 0, 0, 1}}), ErrorKind::InvalidArgument);
}

TEST(DetectDegeneracy, SquareCorners) {
  const auto d = build_voronoi(kSquare);
  const auto v = detect_degeneracy(d);
  ASSERT_EQ(v.degenerate_vertices.size(), 1u);
  const Point2 c = d.tessellation.vertices[v.degenerate_vertices[0]];
  EXPECT_NEAR(c.x, 0.5, 1e-12);
  EXPECT_NEAR(c.y, 0.5, 1e-12);
}

TEST(DetectDegeneracy, ThreeGenerators) {
  EXPECT_TRUE(detect_degeneracy(build_voronoi(kThree)).non_degenerate());
}

TEST(DetectDegeneracy, JitteredLatticeIsNonDegenerate) {
  // A square lattice is maximally co-circular; jitter of at least 1e-3 breaks it.
  int degenerate = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> j(-0.05, 0.05);
    GeneratorSet g;
    g.bounds = {-1, -1, 6, 6};
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        double dx = j(rng), dy = j(rng);
        if (std::abs(dx) < 1e-3) dx = std::copysign(1e-3, dx);
        if (std::abs(dy) < 1e-3) dy = std::copysign(1e-3, dy);
        g.points.push_back({c + dx, r + dy});
      }
    }
    if (!detect_degeneracy(build_voronoi(g)).non_degenerate()) ++degenerate;
  }
  EXPECT_EQ(degenerate, 0);
}

TEST(LargestEmptyCircle, ThreeGenerators) {
  const auto d = build_voronoi(kThree);
  const std::size_t v = interior_vertices(d.tessellation).at(0);
  const Circle c = largest_empty_circle_at(d, v);
  EXPECT_NEAR(c.radius, std::sqrt(2.0), 1e-12);
  EXPECT_EQ(generators_on_circle(d.generators, c).size(), 3u);
}

TEST(LargestEmptyCircle, SquareCenterTouchesFour) {
  const auto d = build_voronoi(kSquare);
  const std::size_t v = detect_degeneracy(d).degenerate_vertices.at(0);
  const Circle c = largest_empty_circle_at(d, v);
  EXPECT_EQ(generators_on_circle(d.generators, c).size(), 4u);
}

TEST(LargestEmptyCircle, DummyRejected) {
  const auto d = build_voronoi(kThree);
  try {
    largest_empty_circle_at(d, d.tessellation.n_ordinary);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInteriorVertex);
  }
}

// Oracle: exhaustive scan over all generators.
TEST(LargestEmptyCircle, EmptyAtEveryInteriorVertex) {
  const auto g = random_generators(50, 12);
  const auto d = build_voronoi(g);
  for (std::size_t v : interior_vertices(d.tessellation)) {
    const Circle c = largest_empty_circle_at(d, v);
    double margin = INFINITY;
    for (const Point2& p : g.points) margin = std::min(margin, distance(p, c.center) - c.radius);
    EXPECT_GE(margin, -1e-9);
    if (d.tessellation.degree(v) == 3) {
      EXPECT_EQ(generators_on_circle(g, c).size(), 3u);
    }
  }
}

TEST(GridGrowthLabels, TwoSitesFollowBisector) {
  const GeneratorSet g{{{0.25, 0.5}, {0.75, 0.5}}, {0, 0, 1, 1}};
  const auto grid = grid_growth_labels(g, 50);
  for (std::size_t r = 0; r < 50; ++r) {
    for (std::size_t c = 0; c < 50; ++c) {
      const Point2 s = grid.sample_point(r, c);
      const std::uint32_t expected = s.x < 0.5 ? 0 : 1;
      if (std::abs(s.x - 0.5) > grid.cell_diagonal()) {
        EXPECT_EQ(grid.at(r, c), expected);
      }
    }
  }
}

TEST(GridGrowthLabels, TiesGoToLowestIndex) {
  // Resolution 3 puts the middle column exactly on the bisector x = 0.5.
  const GeneratorSet g{{{0.25, 0.5}, {0.75, 0.5}}, {0, 0, 1, 1}};
  const auto grid = grid_growth_labels(g, 3);
  EXPECT_EQ(grid.sample_point(1, 1).x, 0.5);
  EXPECT_EQ(grid.at(1, 1), 0u);
}

TEST(GridGrowthLabels, MatchesPolygonsAwayFromBoundaries) {
  const auto g = random_generators(30, 6);
  const auto d = build_voronoi(g);
  const auto grid = grid_growth_labels(g, 120);
  std::size_t checked = 0;
  for (std::size_t r = 0; r < grid.resolution; ++r) {
    for (std::size_t c = 0; c < grid.resolution; ++c) {
      const Point2 s = grid.sample_point(r, c);
      for (std::size_t i = 0; i < d.regions.size(); ++i) {
        const auto& ring = d.regions[i];
        double inner = INFINITY;
        bool inside = true;
        for (std::size_t k = 0; k < ring.size(); ++k) {
          const Segment e{ring[k], ring[(k + 1) % ring.size()]};
          if (cross(e.b - e.a, s - e.a) < 0) inside = false;
          inner = std::min(inner, distance_to_segment(s, e));
        }
        if (inside && inner > 2 * grid.cell_diagonal()) {
          EXPECT_EQ(grid.at(r, c), i);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(GridGrowthLabels, TranslationInvariant) {
  auto g = random_generators(15, 9);
  const auto before = grid_growth_labels(g, 64);
  for (Point2& p : g.points) p += {0.125, -4.0};
  g.bounds = {g.bounds.xmin + 0.125, g.bounds.ymin - 4.0, g.bounds.xmax + 0.125,
              g.bounds.ymax - 4.0};
  EXPECT_EQ(grid_growth_labels(g, 64).labels, before.labels);
}

TEST(GridGrowthLabels, ResolutionTooSmall) {
  try {
    grid_growth_labels(kThree, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(GeneratorFile, RoundTrip) {
  const auto g = random_generators(12, 77, {-1.5, 2, 3, 9.25});
  const std::string text = serialize_generators(g);
  EXPECT_EQ(text.rfind("gen 12\nbounds -1.5 2 3 9.25\np ", 0), 0u);
  const GeneratorSet back = parse_generators(std::string_view(text));
  EXPECT_EQ(back, g);
  EXPECT_EQ(serialize_generators(back), text);
}

TEST(GeneratorFile, CountMismatch) {
  try {
    parse_generators(std::string_view("gen 3\nbounds 0 0 1 1\np 0.5 0.5\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FormatError);
  }
}

TEST(LabelFile, Format) {
  const GeneratorSet g{{{0.25, 0.5}, {0.75, 0.5}}, {0, 0, 1, 1}};
  EXPECT_EQ(serialize_labels(grid_growth_labels(g, 2)), "labels 2\n0 1\n0 1\n");
}

}  // namespace
}  // namespace vorinv
