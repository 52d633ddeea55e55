// SPDX-License-Identifier: Apache-2.0
#include "svg.hpp"

#include <algorithm>
#include <cstdio>

namespace vorinv::tools {

namespace {

struct Frame {
  double x0, y1, scale, pad;
  double width, height;

  // SVG y grows downward.
  Point2 map(Point2 p) const { return {pad + (p.x - x0) * scale, pad + (y1 - p.y) * scale}; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Tessellation& t, const RenderOptions& options) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  const auto grow = [&](Point2 p) {
    if (first) {
      x0 = x1 = p.x;
      y0 = y1 = p.y;
      first = false;
    }
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  };
  for (const Point2& p : t.vertices) grow(p);
  for (const Point2& p : options.generators) grow(p);
  for (const Point2& p : options.estimates) grow(p);
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double pad = 0.05 * options.width_px;
  const double scale = (options.width_px - 2 * pad) / span;
  Frame f{x0, y1, scale, pad, 2 * pad + (x1 - x0) * scale, 2 * pad + (y1 - y0) * scale};

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.width) + "\" height=\"" +
         num(f.height) + "\" viewBox=\"0 0 " + num(f.width) + " " + num(f.height) + "\">\n";
  out += "<g class=\"edges\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  for (std::size_t u = 0; u < t.n_ordinary; ++u) {
    for (std::size_t v : t.adjacency[u]) {
      if (!t.is_dummy(v) && v < u) continue;
      const Point2 a = f.map(t.vertices[u]);
      const Point2 b = f.map(t.vertices[v]);
      out += "<polyline class=\"edge\" points=\"" + num(a.x) + "," + num(a.y) + " " + num(b.x) + "," +
             num(b.y) + "\"/>\n";
    }
  }
  out += "</g>\n";
  if (!options.circles.empty()) {
    out += "<g class=\"empty-circles\" stroke=\"#1f77b4\" stroke-width=\"0.75\" fill=\"none\">\n";
    for (const Circle& c : options.circles) {
      const Point2 m = f.map(c.center);
      out += "<circle class=\"empty-circle\" cx=\"" + num(m.x) + "\" cy=\"" + num(m.y) + "\" r=\"" +
             num(c.radius * scale) + "\"/>\n";
    }
    out += "</g>\n";
  }
  if (!options.generators.empty()) {
    out += "<g class=\"generators\" fill=\"#d62728\">\n";
    for (const Point2& p : options.generators) {
      const Point2 m = f.map(p);
      out += "<circle class=\"generator\" cx=\"" + num(m.x) + "\" cy=\"" + num(m.y) + "\" r=\"3\"/>\n";
    }
    out += "</g>\n";
  }
  if (!options.estimates.empty()) {
    out += "<g class=\"estimates\" stroke=\"#2ca02c\" stroke-width=\"1.5\">\n";
    for (const Point2& p : options.estimates) {
      const Point2 m = f.map(p);
      const double s = 4.0;
      out += "<path class=\"estimate\" d=\"M" + num(m.x - s) + " " + num(m.y - s) + " L" +
             num(m.x + s) + " " + num(m.y + s) + " M" + num(m.x - s) + " " + num(m.y + s) + " L" +
             num(m.x + s) + " " + num(m.y - s) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace vorinv::tools
