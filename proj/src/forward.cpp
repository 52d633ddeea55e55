// SPDX-License-Identifier: Apache-2.0
#include "vorinv/forward.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "vorinv/detail/parallel.hpp"
#include "vorinv/detail/point_index.hpp"
#include "vorinv/error.hpp"

namespace vorinv {

void validate(const GeneratorSet& g) {
  if (!g.bounds.valid()) throw Error(ErrorKind::InvalidArgument, "bounds must satisfy xmin < xmax, ymin < ymax");
  if (g.points.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "need n >= 2 generators, got " + std::to_string(g.points.size()));
  }
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    if (!is_finite(g.points[i]) || !g.bounds.contains_strictly(g.points[i])) {
      throw Error(ErrorKind::GeneratorOutsideBounds,
                  "generator " + std::to_string(i) + " is not strictly inside the bounds", i);
    }
  }
  const detail::PointIndex index(g.points, &g.bounds);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    index.for_each_within(g.points[i], kDuplicateTolerance, [&](std::size_t j) {
      if (j != i) {
        throw Error(ErrorKind::DuplicateGenerators,
                    "generators " + std::to_string(std::min(i, j)) + " and " +
                        std::to_string(std::max(i, j)) + " coincide",
                    std::min(i, j));
      }
    });
  }
}

namespace {

// Edge labels: >= 0 is the neighboring generator, < 0 a side of the bounds.
constexpr long kBoundarySide = -1;

struct CellVertex {
  Point2 p;
  long out_label;  // label of the edge from this vertex to the next
};

using Cell = std::vector<CellVertex>;

Cell initial_cell(const Rect& r) {
  return {{{r.xmin, r.ymin}, kBoundarySide},
          {{r.xmax, r.ymin}, kBoundarySide},
          {{r.xmax, r.ymax}, kBoundarySide},
          {{r.xmin, r.ymax}, kBoundarySide}};
}

// Keep the part of `cell` closer to `site` than to `other`.
void clip(Cell& cell, Point2 site, Point2 other, long label, Cell& scratch) {
  const Point2 mid = 0.5 * (site + other);
  const Point2 dir = other - site;
  const auto side = [&](Point2 x) { return dot(x - mid, dir); };

  bool any_out = false;
  for (const auto& v : cell) {
    if (side(v.p) > 0.0) {
      any_out = true;
      break;
    }
  }
  if (!any_out) return;

  scratch.clear();
  const std::size_t m = cell.size();
  for (std::size_t k = 0; k < m; ++k) {
    const CellVertex& a = cell[k];
    const CellVertex& b = cell[(k + 1) % m];
    const double sa = side(a.p);
    const double sb = side(b.p);
    const bool a_in = sa <= 0.0;
    const bool b_in = sb <= 0.0;
    if (a_in && b_in) {
      scratch.push_back(a);
    } else if (a_in) {
      if (sa == 0.0) {
        scratch.push_back({a.p, label});
      } else {
        scratch.push_back(a);
        const double t = sa / (sa - sb);
        scratch.push_back({a.p + t * (b.p - a.p), label});
      }
    } else if (b_in && sb != 0.0) {
      const double t = sa / (sa - sb);
      scratch.push_back({a.p + t * (b.p - a.p), a.out_label});
    }
  }
  cell.swap(scratch);
}

Cell build_cell(const GeneratorSet& g, const detail::PointIndex& index, std::size_t i) {
  Cell cell = initial_cell(g.bounds);
  Cell scratch;
  const Point2 site = g.points[i];
  const auto max_radius = [&] {
    double r = 0.0;
    for (const auto& v : cell) r = std::max(r, distance(v.p, site));
    return r;
  };
  double radius = max_radius();
  index.for_each_ring(site, [&](double bound, std::span<const std::size_t> ids) {
    if (bound > 2.0 * radius) return false;
    // Nearer neighbors first shrink the cell fastest.
    std::vector<std::size_t> order(ids.begin(), ids.end());
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = distance(g.points[a], site);
      const double db = distance(g.points[b], site);
      return da < db || (da == db && a < b);
    });
    for (std::size_t j : order) {
      if (j == i) continue;
      if (distance(g.points[j], site) > 2.0 * radius) continue;
      clip(cell, site, g.points[j], static_cast<long>(j), scratch);
      radius = max_radius();
    }
    return true;
  });
  return cell;
}

// Union-find clustering of points within `tol` of each other.
std::vector<std::size_t> cluster_points(const std::vector<Point2>& pts, double tol) {
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (pts.empty()) return parent;
  const double cell = std::max(tol, std::numeric_limits<double>::min());
  std::unordered_multimap<std::uint64_t, std::size_t> buckets;
  buckets.reserve(pts.size() * 2);
  const auto key = [](long long bx, long long by) {
    return (static_cast<std::uint64_t>(bx) * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(by);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const long long bx = static_cast<long long>(std::floor(pts[i].x / cell));
    const long long by = static_cast<long long>(std::floor(pts[i].y / cell));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto [lo, hi] = buckets.equal_range(key(bx + dx, by + dy));
        for (auto it = lo; it != hi; ++it) {
          if (distance(pts[it->second], pts[i]) <= tol) {
            const std::size_t a = find(it->second);
            const std::size_t b = find(i);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
          }
        }
      }
    }
    buckets.emplace(key(bx, by), i);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = find(i);
  return parent;
}

}  // namespace

namespace {

std::vector<std::size_t> spatial_order(const GeneratorSet& g) {
  const std::size_t n = g.size();
  const double rows = std::max(1.0, std::floor(std::sqrt(static_cast<double>(n) / 2.0)));
  const auto row_of = [&](Point2 p) {
    return static_cast<long>(std::floor((p.y - g.bounds.ymin) / g.bounds.height() * rows));
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Point2 pa = g.points[a], pb = g.points[b];
    const long ra = row_of(pa), rb = row_of(pb);
    if (ra != rb) return ra < rb;
    if (pa.x != pb.x) return (ra % 2 == 0) ? pa.x < pb.x : pa.x > pb.x;
    return a < b;
  });
  return order;
}

}  // namespace

VoronoiDiagram build_voronoi(const GeneratorSet& g, const BuildOptions& options) {
  validate(g);
  const std::size_t n = g.size();
  const detail::PointIndex index(g.points, &g.bounds);

  std::vector<Cell> cells(n);
  detail::parallel_for(n, [&](std::size_t i) { cells[i] = build_cell(g, index, i); });

  // Collect bisector edges once per generator pair, from the lower index.
  // Cells are visited in a serpentine row order so that vertex numbers follow
  // position, which keeps later traversals cache-friendly.
  struct RawEdge {
    std::size_t gi, gj;
    Point2 a, b;
    bool a_boundary, b_boundary;
  };
  std::vector<RawEdge> raw;
  for (std::size_t i : spatial_order(g)) {
    const Cell& c = cells[i];
    const std::size_t m = c.size();
    for (std::size_t k = 0; k < m; ++k) {
      const long label = c[k].out_label;
      if (label < 0 || static_cast<std::size_t>(label) < i) continue;
      const CellVertex& a = c[k];
      const CellVertex& b = c[(k + 1) % m];
      const bool a_boundary = c[(k + m - 1) % m].out_label < 0;
      const bool b_boundary = b.out_label < 0;
      raw.push_back({i, static_cast<std::size_t>(label), a.p, b.p, a_boundary, b_boundary});
    }
  }

  // Ordinary vertices: interior endpoints merged within tolerance, plus a
  // midpoint for every edge with no interior endpoint.
  std::vector<Point2> interior;
  std::vector<std::size_t> a_slot(raw.size(), SIZE_MAX), b_slot(raw.size(), SIZE_MAX),
      mid_slot(raw.size(), SIZE_MAX);
  for (std::size_t e = 0; e < raw.size(); ++e) {
    if (!raw[e].a_boundary) a_slot[e] = interior.size(), interior.push_back(raw[e].a);
    if (!raw[e].b_boundary) b_slot[e] = interior.size(), interior.push_back(raw[e].b);
    if (raw[e].a_boundary && raw[e].b_boundary) {
      mid_slot[e] = interior.size();
      interior.push_back(0.5 * (raw[e].a + raw[e].b));
    }
  }
  const std::vector<std::size_t> root = cluster_points(interior, options.merge_tolerance);
  std::vector<std::size_t> vertex_of_root(interior.size(), SIZE_MAX);
  std::vector<Point2> sum;
  std::vector<std::size_t> count;
  std::vector<std::size_t> vertex_of_slot(interior.size());
  for (std::size_t s = 0; s < interior.size(); ++s) {
    std::size_t& v = vertex_of_root[root[s]];
    if (v == SIZE_MAX) {
      v = sum.size();
      sum.push_back({0, 0});
      count.push_back(0);
    }
    sum[v] += interior[s];
    ++count[v];
    vertex_of_slot[s] = v;
  }
  const std::size_t n_ordinary = sum.size();

  Tessellation t;
  t.n_ordinary = n_ordinary;
  t.vertices.resize(n_ordinary);
  for (std::size_t v = 0; v < n_ordinary; ++v) t.vertices[v] = sum[v] / static_cast<double>(count[v]);
  t.adjacency.resize(n_ordinary);
  std::vector<Point2> dummies;

  struct Pair {
    std::size_t gi, gj;
  };
  std::unordered_map<std::uint64_t, Pair> owner;  // undirected tess edge -> generator pair
  const auto link = [&](std::size_t u, std::size_t v, const RawEdge& e) {
    if (u == v) return;
    auto& au = t.adjacency[u];
    if (std::find(au.begin(), au.end(), v) != au.end()) return;
    au.push_back(v);
    if (v < n_ordinary) t.adjacency[v].push_back(u);
    owner[static_cast<std::uint64_t>(std::min(u, v)) << 32 | std::max(u, v)] = {e.gi, e.gj};
  };
  // Dummies get final indices after all ordinary vertices.
  const auto add_dummy = [&](Point2 p) {
    dummies.push_back(p);
    return n_ordinary + dummies.size() - 1;
  };
  for (std::size_t e = 0; e < raw.size(); ++e) {
    const RawEdge& r = raw[e];
    if (mid_slot[e] != SIZE_MAX) {
      const std::size_t m = vertex_of_slot[mid_slot[e]];
      link(m, add_dummy(r.a), r);
      link(m, add_dummy(r.b), r);
      continue;
    }
    if (!r.a_boundary && !r.b_boundary) {
      link(vertex_of_slot[a_slot[e]], vertex_of_slot[b_slot[e]], r);
    } else if (r.a_boundary) {
      link(vertex_of_slot[b_slot[e]], add_dummy(r.a), r);
    } else {
      link(vertex_of_slot[a_slot[e]], add_dummy(r.b), r);
    }
  }
  t.n_dummy = dummies.size();
  t.vertices.insert(t.vertices.end(), dummies.begin(), dummies.end());

  VoronoiDiagram d;
  d.generators = g;
  d.tessellation = std::move(t);
  d.regions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.regions[i].reserve(cells[i].size());
    for (const auto& v : cells[i]) d.regions[i].push_back(v.p);
  }
  d.faces = extract_polygons(d.tessellation);
  d.generator_of_face.resize(d.faces.size());
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    const auto& idx = d.faces[f].vertex_indices;
    const std::size_t u = idx[0];
    const std::size_t v = idx[1];
    const Pair pr = owner.at(static_cast<std::uint64_t>(std::min(u, v)) << 32 | std::max(u, v));
    const Point2 a = d.tessellation.vertices[u];
    const Point2 dir = d.tessellation.vertices[v] - a;
    const double si = cross(dir, g.points[pr.gi] - a);
    const double sj = cross(dir, g.points[pr.gj] - a);
    d.generator_of_face[f] = (si > sj) ? pr.gi : pr.gj;
  }
  return d;
}

DegeneracyVerdict detect_degeneracy(const VoronoiDiagram& d) {
  DegeneracyVerdict v;
  const Tessellation& t = d.tessellation;
  for (std::size_t i = 0; i < t.n_ordinary; ++i) {
    if (t.adjacency[i].size() >= 4) v.degenerate_vertices.push_back(i);
  }
  return v;
}

Circle largest_empty_circle_at(const VoronoiDiagram& d, std::size_t vertex) {
  const Tessellation& t = d.tessellation;
  if (vertex >= t.size() || t.is_dummy(vertex) || t.adjacency[vertex].size() < 3) {
    throw Error(ErrorKind::NotInteriorVertex,
                "vertex " + std::to_string(vertex) + " is not an interior Voronoi vertex", vertex);
  }
  const Point2 q = t.vertices[vertex];
  double r = std::numeric_limits<double>::infinity();
  for (const Point2& p : d.generators.points) r = std::min(r, distance(p, q));
  return {q, r};
}

std::vector<std::size_t> generators_on_circle(const GeneratorSet& g, const Circle& c,
                                              double tolerance) {
  std::vector<std::size_t> out;
  const double slack = tolerance * std::max(1.0, c.radius);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    if (std::abs(distance(g.points[i], c.center) - c.radius) <= slack) out.push_back(i);
  }
  return out;
}

Point2 LabelGrid::sample_point(std::size_t row, std::size_t col) const {
  const double res = static_cast<double>(resolution);
  return {bounds.xmin + (static_cast<double>(col) + 0.5) * bounds.width() / res,
          bounds.ymax - (static_cast<double>(row) + 0.5) * bounds.height() / res};
}

double LabelGrid::cell_diagonal() const {
  const double res = static_cast<double>(resolution);
  return std::hypot(bounds.width() / res, bounds.height() / res);
}

LabelGrid grid_growth_labels(const GeneratorSet& g, std::size_t resolution) {
  validate(g);
  if (resolution < 2) throw Error(ErrorKind::InvalidArgument, "grid resolution must be >= 2");
  LabelGrid grid;
  grid.bounds = g.bounds;
  grid.resolution = resolution;
  grid.labels.resize(resolution * resolution);
  const detail::PointIndex index(g.points, &g.bounds);
  detail::parallel_for(resolution, [&](std::size_t row) {
    for (std::size_t col = 0; col < resolution; ++col) {
      grid.labels[row * resolution + col] =
          static_cast<std::uint32_t>(index.nearest(grid.sample_point(row, col)));
    }
  }, 64);
  return grid;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

[[noreturn]] void gen_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::FormatError, "line " + std::to_string(line_no) + ": " + what, line_no);
}

double read_real(std::istringstream& in, std::size_t line_no) {
  std::string tok;
  if (!(in >> tok)) gen_error(line_no, "missing number");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    gen_error(line_no, "expected real number, got '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v)) gen_error(line_no, "expected real number, got '" + tok + "'");
  return v;
}

}  // namespace

GeneratorSet parse_generators(std::istream& in) {
  GeneratorSet g;
  std::size_t expected = 0;
  bool have_header = false;
  bool have_bounds = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (!have_header) {
      long long n = -1;
      if (tag != "gen" || !(ls >> n) || n < 0) gen_error(line_no, "expected 'gen <n>'");
      expected = static_cast<std::size_t>(n);
      have_header = true;
    } else if (tag == "bounds") {
      g.bounds = {read_real(ls, line_no), read_real(ls, line_no), read_real(ls, line_no),
                  read_real(ls, line_no)};
      have_bounds = true;
    } else if (tag == "p") {
      const double x = read_real(ls, line_no);
      const double y = read_real(ls, line_no);
      g.points.push_back({x, y});
    } else {
      gen_error(line_no, "unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) gen_error(line_no, "trailing token '" + extra + "'");
  }
  if (!have_header) gen_error(line_no, "missing 'gen' header");
  if (!have_bounds) gen_error(line_no, "missing 'bounds' line");
  if (g.points.size() != expected) {
    gen_error(line_no, "expected " + std::to_string(expected) + " points, found " +
                           std::to_string(g.points.size()));
  }
  return g;
}

GeneratorSet parse_generators(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_generators(in);
}

std::string serialize_generators(const GeneratorSet& g) {
  std::string out = "gen " + std::to_string(g.points.size()) + "\n";
  out += "bounds " + format_real(g.bounds.xmin) + " " + format_real(g.bounds.ymin) + " " +
         format_real(g.bounds.xmax) + " " + format_real(g.bounds.ymax) + "\n";
  for (const Point2& p : g.points) out += "p " + format_real(p.x) + " " + format_real(p.y) + "\n";
  return out;
}

std::string serialize_labels(const LabelGrid& grid) {
  std::string out = "labels " + std::to_string(grid.resolution) + "\n";
  for (std::size_t r = 0; r < grid.resolution; ++r) {
    for (std::size_t c = 0; c < grid.resolution; ++c) {
      if (c) out += ' ';
      out += std::to_string(grid.at(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace vorinv
