// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vorinv/geom.hpp"
#include "vorinv/tess.hpp"

namespace vorinv::tools {

struct RenderOptions {
  double width_px = 800.0;
  std::vector<Point2> generators;  // filled dots
  std::vector<Point2> estimates;   // crosses
  std::vector<Circle> circles;     // outlines (largest empty circles)
};

//! Deterministic SVG: one polyline per edge, then the optional overlays.
std::string render_svg(const Tessellation& t, const RenderOptions& options);

}  // namespace vorinv::tools
