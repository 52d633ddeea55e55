// SPDX-License-Identifier: Apache-2.0
#include "vorinv/tess.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "vorinv/error.hpp"

namespace vorinv {

void validate(const Tessellation& t) {
  if (t.n_ordinary + t.n_dummy != t.vertices.size()) {
    throw Error(ErrorKind::FormatError, "vertex count does not match n_ordinary + n_dummy");
  }
  if (t.adjacency.size() != t.n_ordinary) {
    throw Error(ErrorKind::DummyMisplaced,
                "expected exactly one adjacency list per ordinary vertex");
  }
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    if (!is_finite(t.vertices[i])) {
      throw Error(ErrorKind::FormatError, "non-finite coordinate at vertex " + std::to_string(i), i);
    }
  }
  std::vector<std::size_t> dummy_refs(t.n_dummy, 0);
  for (std::size_t i = 0; i < t.n_ordinary; ++i) {
    const auto& nbrs = t.adjacency[i];
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const std::size_t j = nbrs[k];
      if (j >= t.size()) {
        throw Error(ErrorKind::FormatError,
                    "vertex " + std::to_string(i) + " references out-of-range index " +
                        std::to_string(j),
                    i);
      }
      if (j == i) {
        throw Error(ErrorKind::FormatError, "self loop at vertex " + std::to_string(i), i);
      }
      if (std::find(nbrs.begin(), nbrs.begin() + static_cast<std::ptrdiff_t>(k), j) !=
          nbrs.begin() + static_cast<std::ptrdiff_t>(k)) {
        throw Error(ErrorKind::FormatError,
                    "repeated neighbor " + std::to_string(j) + " at vertex " + std::to_string(i), i);
      }
      if (t.is_dummy(j)) {
        ++dummy_refs[j - t.n_ordinary];
      } else {
        const auto& back = t.adjacency[j];
        if (std::find(back.begin(), back.end(), i) == back.end()) {
          throw Error(ErrorKind::AsymmetricAdjacency,
                      std::to_string(j) + " in adj(" + std::to_string(i) + ") but " +
                          std::to_string(i) + " not in adj(" + std::to_string(j) + ")",
                      i);
        }
      }
    }
  }
  for (std::size_t d = 0; d < t.n_dummy; ++d) {
    if (dummy_refs[d] != 1) {
      throw Error(ErrorKind::DummyMisplaced,
                  "dummy vertex " + std::to_string(t.n_ordinary + d) + " referenced " +
                      std::to_string(dummy_refs[d]) + " times (expected 1)",
                  t.n_ordinary + d);
    }
  }
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void format_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::FormatError, "line " + std::to_string(line_no) + ": " + what, line_no);
}

std::size_t parse_index(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) format_error(line_no, "expected integer, got '" + std::string(tok) + "'");
  return value;
}

double parse_double(std::string_view tok, std::size_t line_no) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    format_error(line_no, "expected real number, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Tessellation parse_tessellation(std::istream& in) {
  Tessellation t;
  bool have_header = false;
  std::size_t n_total = 0;
  std::size_t next_adj = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const std::string_view tag = tokens.front();
    if (!have_header) {
      if (tag != "tess" || tokens.size() != 3) format_error(line_no, "expected 'tess <n_ordinary> <n_dummy>'");
      t.n_ordinary = parse_index(tokens[1], line_no);
      t.n_dummy = parse_index(tokens[2], line_no);
      n_total = t.n_ordinary + t.n_dummy;
      t.vertices.reserve(n_total);
      t.adjacency.reserve(t.n_ordinary);
      have_header = true;
    } else if (tag == "v") {
      if (tokens.size() != 3) format_error(line_no, "expected 'v <x> <y>'");
      if (t.vertices.size() == n_total) format_error(line_no, "more vertex lines than declared");
      if (next_adj > 0) format_error(line_no, "vertex line after adjacency lines");
      t.vertices.push_back({parse_double(tokens[1], line_no), parse_double(tokens[2], line_no)});
    } else if (tag == "adj") {
      if (tokens.size() < 2 || tokens[1].back() != ':') format_error(line_no, "expected 'adj <i>: ...'");
      if (t.vertices.size() != n_total) format_error(line_no, "adjacency before all vertices were listed");
      const std::size_t i = parse_index(tokens[1].substr(0, tokens[1].size() - 1), line_no);
      if (i >= t.n_ordinary && i < n_total) {
        throw Error(ErrorKind::DummyMisplaced,
                    "line " + std::to_string(line_no) + ": dummy vertex " + std::to_string(i) +
                        " has an adjacency list",
                    i);
      }
      if (i != next_adj) {
        format_error(line_no, "adjacency lines must cover ordinary vertices in ascending order; expected " +
                                  std::to_string(next_adj) + ", got " + std::to_string(i));
      }
      std::vector<std::size_t> nbrs;
      nbrs.reserve(tokens.size() - 2);
      for (std::size_t k = 2; k < tokens.size(); ++k) nbrs.push_back(parse_index(tokens[k], line_no));
      t.adjacency.push_back(std::move(nbrs));
      ++next_adj;
    } else {
      format_error(line_no, "unknown record '" + std::string(tag) + "'");
    }
  }
  if (!have_header) format_error(line_no, "missing 'tess' header");
  if (t.vertices.size() != n_total) {
    format_error(line_no, "expected " + std::to_string(n_total) + " vertex lines, found " +
                              std::to_string(t.vertices.size()));
  }
  if (next_adj != t.n_ordinary) {
    format_error(line_no, "expected " + std::to_string(t.n_ordinary) + " adjacency lines, found " +
                              std::to_string(next_adj));
  }
  validate(t);
  return t;
}

Tessellation parse_tessellation(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tessellation(in);
}

std::string serialize_tessellation(const Tessellation& t) {
  std::string out;
  out.reserve(32 * t.size());
  out += "tess " + std::to_string(t.n_ordinary) + " " + std::to_string(t.n_dummy) + "\n";
  for (const Point2& p : t.vertices) {
    out += "v " + format_real(p.x) + " " + format_real(p.y) + "\n";
  }
  for (std::size_t i = 0; i < t.n_ordinary; ++i) {
    out += "adj " + std::to_string(i) + ":";
    for (std::size_t j : t.adjacency[i]) out += " " + std::to_string(j);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Face extraction

namespace {

struct HalfEdgeGraph {
  // Half edges are numbered by tail vertex, in adjacency-list order; the
  // single half edge leaving a dummy comes after all ordinary ones.
  using Index = std::uint32_t;
  std::vector<Index> offset;  // first half-edge id per vertex
  std::vector<Index> head;    // head vertex per half edge
  std::vector<Index> tail;
  std::vector<Index> twin;
  std::vector<Index> next;  // next half edge with the same face on the left
};

HalfEdgeGraph build_half_edges(const Tessellation& t) {
  using Index = HalfEdgeGraph::Index;
  const std::size_t nv = t.size();
  HalfEdgeGraph g;
  g.offset.assign(nv + 1, 0);
  std::vector<Index> dummy_owner(t.n_dummy, 0);
  std::size_t total = t.n_dummy;
  for (std::size_t i = 0; i < t.n_ordinary; ++i) {
    if (t.adjacency[i].empty()) {
      throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(i) + " has no edges", i);
    }
    total += t.adjacency[i].size();
    g.offset[i + 1] = static_cast<Index>(t.adjacency[i].size());
    for (std::size_t j : t.adjacency[i]) {
      if (t.is_dummy(j)) dummy_owner[j - t.n_ordinary] = static_cast<Index>(i);
    }
  }
  if (total >= std::numeric_limits<Index>::max()) {
    throw Error(ErrorKind::InvalidArgument, "tessellation too large");
  }
  for (std::size_t d = 0; d < t.n_dummy; ++d) g.offset[t.n_ordinary + d + 1] = 1;
  for (std::size_t v = 0; v < nv; ++v) g.offset[v + 1] += g.offset[v];
  const std::size_t nh = g.offset[nv];
  g.head.resize(nh);
  g.tail.resize(nh);
  g.twin.resize(nh);
  g.next.resize(nh);
  for (std::size_t v = 0; v < nv; ++v) {
    for (Index h = g.offset[v]; h < g.offset[v + 1]; ++h) {
      g.tail[h] = static_cast<Index>(v);
      g.head[h] = t.is_dummy(v) ? dummy_owner[v - t.n_ordinary]
                                : static_cast<Index>(t.adjacency[v][h - g.offset[v]]);
    }
  }
  for (std::size_t h = 0; h < nh; ++h) {
    Index back = g.offset[g.head[h]];
    while (g.head[back] != g.tail[h]) ++back;
    g.twin[h] = back;
  }

  // Rotation system: sort the outgoing half edges of each vertex by angle.
  // Arriving at v along u -> v, leave along the edge immediately clockwise of
  // v -> u. Dummies (degree one) turn straight back.
  std::vector<std::pair<double, Index>> around;
  for (std::size_t v = 0; v < nv; ++v) {
    around.clear();
    const Point2 o = t.vertices[v];
    for (Index h = g.offset[v]; h < g.offset[v + 1]; ++h) {
      const Point2 d = t.vertices[g.head[h]] - o;
      around.emplace_back(std::atan2(d.y, d.x), h);
    }
    std::stable_sort(around.begin(), around.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t deg = around.size();
    for (std::size_t k = 0; k < deg; ++k) {
      g.next[g.twin[around[k].second]] = around[(k + deg - 1) % deg].second;
    }
  }
  return g;
}

std::size_t count_components(const Tessellation& t, const HalfEdgeGraph& g) {
  const std::size_t nv = t.size();
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t h = 0; h < g.head.size(); ++h) parent[find(g.head[h])] = find(g.tail[h]);
  std::size_t c = 0;
  for (std::size_t v = 0; v < nv; ++v) c += (find(v) == v) ? 1 : 0;
  return c;
}

}  // namespace

std::vector<Polygon> extract_polygons(const Tessellation& t) {
  validate(t);
  const HalfEdgeGraph g = build_half_edges(t);
  const std::size_t nh = g.head.size();
  std::vector<bool> seen(nh, false);

  struct Keyed {
    std::size_t key;
    Polygon polygon;
  };
  std::vector<Keyed> found;
  std::size_t n_walks = 0;

  for (std::size_t start = 0; start < nh; ++start) {
    if (seen[start]) continue;
    ++n_walks;
    std::vector<std::size_t> walk;
    std::size_t h = start;
    do {
      if (seen[h]) {
        throw Error(ErrorKind::NonPlanarEmbedding, "face traversal did not close");
      }
      seen[h] = true;
      walk.push_back(h);
      h = g.next[h];
    } while (h != start);

    std::vector<std::size_t> dummy_starts;  // positions in walk whose tail is a dummy
    for (std::size_t k = 0; k < walk.size(); ++k) {
      if (t.is_dummy(g.tail[walk[k]])) dummy_starts.push_back(k);
    }

    if (dummy_starts.empty()) {
      std::vector<Point2> ring;
      ring.reserve(walk.size());
      for (std::size_t e : walk) ring.push_back(t.vertices[g.tail[e]]);
      if (!(signed_area(ring) > 0.0)) continue;  // outer face
      const auto min_it = std::min_element(walk.begin(), walk.end());
      std::rotate(walk.begin(), min_it, walk.end());
      Polygon p;
      for (std::size_t e : walk) p.vertex_indices.push_back(g.tail[e]);
      found.push_back({walk.front(), std::move(p)});
      continue;
    }

    // One unbounded polygon per run d_k -> ... -> d_{k+1}.
    for (std::size_t s = 0; s < dummy_starts.size(); ++s) {
      const std::size_t begin = dummy_starts[s];
      const std::size_t end =
          (s + 1 < dummy_starts.size()) ? dummy_starts[s + 1] : dummy_starts[0] + walk.size();
      Polygon p;
      p.is_unbounded = true;
      std::size_t key = nh;
      for (std::size_t k = begin; k < end; ++k) {
        const std::size_t e = walk[k % walk.size()];
        p.vertex_indices.push_back(g.tail[e]);
        key = std::min(key, e);
      }
      p.vertex_indices.push_back(g.head[walk[(end - 1) % walk.size()]]);
      found.push_back({key, std::move(p)});
    }
  }

  // Euler characteristic per connected component must be 2 for a plane
  // embedding of the rotation system.
  const std::size_t n_edges = nh / 2;
  const std::size_t comps = count_components(t, g);
  const long long euler = static_cast<long long>(t.size()) - static_cast<long long>(n_edges) +
                          static_cast<long long>(n_walks);
  if (euler != 2 * static_cast<long long>(comps)) {
    throw Error(ErrorKind::NonPlanarEmbedding,
                "rotation system is not planar (V - E + F = " + std::to_string(euler) + ")");
  }

  std::sort(found.begin(), found.end(),
            [](const Keyed& a, const Keyed& b) { return a.key < b.key; });
  std::vector<Polygon> out;
  out.reserve(found.size());
  for (auto& k : found) out.push_back(std::move(k.polygon));
  return out;
}

std::vector<EdgeFaces> edge_faces(const Tessellation& t, std::span<const Polygon> polygons) {
  std::unordered_map<std::uint64_t, std::size_t> directed;
  const std::uint64_t nv = t.size();
  for (std::size_t pi = 0; pi < polygons.size(); ++pi) {
    const auto& idx = polygons[pi].vertex_indices;
    const std::size_t m = idx.size();
    const std::size_t n_sides = polygons[pi].is_unbounded ? m - 1 : m;
    for (std::size_t k = 0; k < n_sides; ++k) {
      directed[idx[k] * nv + idx[(k + 1) % m]] = pi;
    }
  }
  std::vector<EdgeFaces> out;
  for (std::size_t u = 0; u < t.n_ordinary; ++u) {
    for (std::size_t v : t.adjacency[u]) {
      if (!t.is_dummy(v) && v < u) continue;
      EdgeFaces e{u, v, std::nullopt, std::nullopt};
      if (auto it = directed.find(u * nv + v); it != directed.end()) e.left = it->second;
      if (auto it = directed.find(v * nv + u); it != directed.end()) e.right = it->second;
      out.push_back(e);
    }
  }
  return out;
}

std::vector<Point2> polygon_points(const Tessellation& t, const Polygon& p) {
  std::vector<Point2> pts;
  pts.reserve(p.size());
  for (std::size_t i : p.vertex_indices) pts.push_back(t.vertices[i]);
  return pts;
}

namespace {

// Arc-length coordinate of a point on (or snapped to) the rectangle boundary,
// counterclockwise from the lower-left corner.
double perimeter_coordinate(const Rect& r, Point2 p) {
  const double w = r.width();
  const double h = r.height();
  const double d_bottom = std::abs(p.y - r.ymin);
  const double d_right = std::abs(p.x - r.xmax);
  const double d_top = std::abs(p.y - r.ymax);
  const double d_left = std::abs(p.x - r.xmin);
  const double m = std::min({d_bottom, d_right, d_top, d_left});
  if (m == d_bottom) return std::clamp(p.x - r.xmin, 0.0, w);
  if (m == d_right) return w + std::clamp(p.y - r.ymin, 0.0, h);
  if (m == d_top) return w + h + std::clamp(r.xmax - p.x, 0.0, w);
  return 2 * w + h + std::clamp(r.ymax - p.y, 0.0, h);
}

}  // namespace

double polygon_area(const Tessellation& t, const Polygon& p, const std::optional<Rect>& clip) {
  std::vector<Point2> ring = polygon_points(t, p);
  if (p.is_unbounded && clip && ring.size() >= 2) {
    const Rect& r = *clip;
    const double w = r.width();
    const double h = r.height();
    const double perim = 2 * (w + h);
    const std::array<std::pair<double, Point2>, 4> corners{{{w, {r.xmax, r.ymin}},
                                                            {w + h, {r.xmax, r.ymax}},
                                                            {2 * w + h, {r.xmin, r.ymax}},
                                                            {perim, {r.xmin, r.ymin}}}};
    const double s_from = perimeter_coordinate(r, ring.back());
    double s_to = perimeter_coordinate(r, ring.front());
    if (s_to <= s_from) s_to += perim;
    for (int lap = 0; lap < 2; ++lap) {
      for (const auto& [s, c] : corners) {
        const double sc = s + lap * perim;
        if (sc > s_from && sc < s_to) ring.push_back(c);
      }
    }
  }
  return signed_area(ring);
}

DegreeVerdict vertex_degree_check(const Tessellation& t) {
  DegreeVerdict v;
  for (std::size_t i = 0; i < t.n_ordinary; ++i) {
    if (t.adjacency[i].size() != 3) v.violations.push_back(i);
  }
  return v;
}

Tessellation perturb_vertices(const Tessellation& t, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::InvalidArgument, "sigma must be finite and >= 0");
  }
  Tessellation out = t;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (std::size_t i = 0; i < t.n_ordinary; ++i) {
    const double dx = noise(rng);
    const double dy = noise(rng);
    out.vertices[i] = {t.vertices[i].x + dx, t.vertices[i].y + dy};
  }
  return out;
}

}  // namespace vorinv
