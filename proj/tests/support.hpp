// SPDX-License-Identifier: Apache-2.0
// Shared fixtures for the test suites.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vorinv/error.hpp"
#include "vorinv/forward.hpp"
#include "vorinv/invert.hpp"
#include "vorinv/tess.hpp"

namespace vorinv::testing {

inline GeneratorSet random_generators(std::size_t n, std::uint64_t seed, Rect bounds = {0, 0, 1, 1}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(bounds.xmin, bounds.xmax);
  std::uniform_real_distribution<double> uy(bounds.ymin, bounds.ymax);
  GeneratorSet g;
  g.bounds = bounds;
  while (g.points.size() < n) {
    const Point2 p{ux(rng), uy(rng)};
    if (bounds.contains_strictly(p)) g.points.push_back(p);
  }
  return g;
}

// A set is usable for inversion when every ordinary vertex has degree 3 and
// every cell has at least two rays that meet. Cells touching a single
// interior vertex carry no scale information and are rejected here.
inline bool invertible(const VoronoiDiagram& d) {
  if (d.faces.size() != d.generators.size()) return false;
  if (!vertex_degree_check(d.tessellation).all_degree_three()) return false;
  try {
    invert(d.tessellation, d.faces, Method::AlgI);
  } catch (const Error&) {
    return false;
  }
  return true;
}

struct CorpusEntry {
  std::uint64_t seed = 0;
  VoronoiDiagram diagram;
};

// Deterministic rejection sampler: draws seeds from `first_seed` upward until
// an invertible set is found.
inline CorpusEntry invertible_set(std::size_t n, std::uint64_t first_seed) {
  for (std::uint64_t s = first_seed;; ++s) {
    VoronoiDiagram d = build_voronoi(random_generators(n, s));
    if (invertible(d)) return {s, std::move(d)};
  }
}

// Twenty sets cycling through n = 5, 10, 50, 200.
inline std::vector<CorpusEntry> acceptance_corpus() {
  static const std::size_t sizes[] = {5, 10, 50, 200};
  std::vector<CorpusEntry> out;
  std::uint64_t next = 1;
  for (std::size_t k = 0; k < 20; ++k) {
    out.push_back(invertible_set(sizes[k % 4], next));
    next = out.back().seed + 1;
  }
  return out;
}

inline Point2 truth_of(const VoronoiDiagram& d, std::size_t face) {
  return d.generators.points[d.generator_of_face[face]];
}

// Regular hexagonal patch: the Voronoi diagram of a triangular lattice.
inline GeneratorSet hex_lattice(std::size_t rows, std::size_t cols) {
  GeneratorSet g;
  const double h = std::sqrt(3.0) / 2.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      g.points.push_back({static_cast<double>(c) + 0.5 * static_cast<double>(r % 2),
                          static_cast<double>(r) * h});
    }
  }
  g.bounds = {-0.25, -0.25, static_cast<double>(cols) - 0.5 + 0.25,
              static_cast<double>(rows - 1) * h + 0.25};
  return g;
}

}  // namespace vorinv::testing
