// SPDX-License-Identifier: Apache-2.0
//
// Inversion error metrology: re-synthesize a diagram from recovered
// generators, compare vertex sets, and run seeded noise sweeps.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vorinv/forward.hpp"
#include "vorinv/invert.hpp"
#include "vorinv/tess.hpp"

namespace vorinv {

struct ErrorReport {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  Method method = Method::AlgI;
  //! vs ground truth, over the polygons that were inverted; absent when the
  //! truth is unknown or no polygon could be inverted.
  std::optional<double> generator_rms;
  double vertex_rms = 0.0;              // NaN when no vertices matched
  double matched_fraction = 0.0;
  bool no_matches = false;
  std::string status = "ok";
  //! Generator displacement per polygon (NaN where inversion failed).
  std::vector<double> per_polygon_error;

  bool ok() const { return status == "ok"; }
};

//! Forward diagram of the estimated generators, clipped to `bounds` grown by
//! a 1%-of-diagonal margin around any estimate that falls outside it.
//! Throws DuplicateEstimates
//! when two estimates are within 1e-9 (inversion collapse), and the usual
//! build errors otherwise.
VoronoiDiagram resynthesize(const GeneratorEstimate& estimate, const Rect& bounds,
                            const BuildOptions& options = {});

//! Greedy one-to-one matching of ordinary vertices by ascending distance,
//! within `match_radius`; RMS over the matched pairs. matched_fraction is
//! relative to the larger of the two ordinary vertex counts.
ErrorReport vertex_rms_error(const Tessellation& a, const Tessellation& b, double match_radius);

//! 5 sigma when sigma > 0, otherwise 1% of `diagonal`.
double default_match_radius(double sigma, double diagonal);

enum class NoiseModel {
  Gaussian,      // every ordinary vertex gets N(0, sigma^2) per coordinate
  SingleVertex,  // one random ordinary vertex moved by exactly `sigma`
};

struct SweepOptions {
  InvertOptions invert{.epsilon = 1e-4, .strict = false, .known = {}};
  NoiseModel noise = NoiseModel::Gaussian;
  BuildOptions build;
  bool parallel = true;
};

//! What a round trip needs: the observed tessellation, its polygons, the
//! region to re-synthesize in and, when known, the true generator of each
//! polygon.
struct RoundtripInput {
  Tessellation tessellation;
  std::vector<Polygon> faces;
  Rect bounds;
  std::optional<std::vector<Point2>> truth_of_face;
};

RoundtripInput roundtrip_input(const VoronoiDiagram& d);
//! Ground truth unknown; bounds are the bounding box of all vertices.
RoundtripInput roundtrip_input(const Tessellation& t);

//! Perturb, invert, compare: one row per (sigma, seed, method), in that
//! nesting order. vertex_rms compares the re-synthesized diagram with the
//! unperturbed input.
std::vector<ErrorReport> roundtrip_sweep(const RoundtripInput& input, std::span<const double> sigmas,
                                         std::span<const std::uint64_t> seeds,
                                         std::span<const Method> methods,
                                         const SweepOptions& options = {});

//! roundtrip_sweep over the forward diagram of `g`.
//! One row per (sigma, seed, method), in that nesting order. Inversion and
//! re-synthesis failures land in the row's status instead of aborting.
std::vector<ErrorReport> noise_sweep(const GeneratorSet& g, std::span<const double> sigmas,
                                     std::span<const std::uint64_t> seeds,
                                     std::span<const Method> methods,
                                     const SweepOptions& options = {});

//! The displaced vertex chosen by the SingleVertex model for this seed.
std::size_t outlier_vertex(const Tessellation& t, std::uint64_t seed);

std::string reports_to_csv(std::span<const ErrorReport> reports);

struct MethodSummary {
  double sigma = 0.0;
  Method method = Method::AlgI;
  std::size_t rows = 0;
  std::size_t failed = 0;              // rows whose status is not "ok"
  double median_generator_rms = 0.0;  // rows without any estimate count as +inf
  double median_vertex_rms = 0.0;     // over rows with a finite value
};

//! Per (sigma, method) medians, in first-appearance order.
std::vector<MethodSummary> summarize(std::span<const ErrorReport> reports);
std::string summary_table(std::span<const MethodSummary> summary);

double median(std::vector<double> values);

}  // namespace vorinv
