// SPDX-License-Identifier: Apache-2.0
#include "vorinv/geom.hpp"

#include <algorithm>

#include "vorinv/error.hpp"

namespace vorinv {

Point2 normalized(Point2 a) {
  const double n = norm(a);
  return {a.x / n, a.y / n};
}

Point2 rotate(Point2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Ray make_ray(Point2 origin, Point2 direction) {
  return {origin, normalized(direction)};
}

double distance(Point2 p, Point2 q) { return norm(p - q); }

Line perpendicular_bisector(const Segment& s) {
  const Point2 d = s.b - s.a;
  if (!(norm(d) > 0.0)) {
    throw Error(ErrorKind::DegenerateSegment, "segment endpoints coincide");
  }
  return {0.5 * (s.a + s.b), normalized(perp(d))};
}

Circle circumcircle(Point2 a, Point2 b, Point2 c) {
  // Solve relative to a to keep the arithmetic well scaled.
  const Point2 ab = b - a;
  const Point2 ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = norm(ab) * norm(ac);
  if (!(std::abs(d) > 1e-14 * scale) || scale == 0.0) {
    throw Error(ErrorKind::CollinearPoints, "circumcircle of collinear points");
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point2 rel{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + rel, norm(rel)};
}

std::optional<RayHit> ray_intersection_params(const Ray& r1, const Ray& r2) {
  const double denom = cross(r1.direction, r2.direction);
  if (std::abs(denom) < kParallelTolerance) return std::nullopt;
  const Point2 w = r2.origin - r1.origin;
  const double t1 = cross(w, r2.direction) / denom;
  const double t2 = cross(w, r1.direction) / denom;
  if (t1 < 0.0 || t2 < 0.0) return std::nullopt;
  // Average the two parametrizations so the result is symmetric in r1, r2.
  const Point2 p = 0.5 * ((r1.origin + t1 * r1.direction) + (r2.origin + t2 * r2.direction));
  return RayHit{p, t1, t2};
}

std::optional<Point2> ray_intersection(const Ray& r1, const Ray& r2) {
  if (auto hit = ray_intersection_params(r1, r2)) return hit->point;
  return std::nullopt;
}

double angle_at(Point2 vertex, Point2 a, Point2 b) {
  const Point2 u = a - vertex;
  const Point2 v = b - vertex;
  if (norm(u) == 0.0 || norm(v) == 0.0) {
    throw Error(ErrorKind::DegenerateAngle, "angle arm has zero length");
  }
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

double ccw_angle(Point2 from, Point2 to) {
  double a = std::atan2(cross(from, to), dot(from, to));
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

double signed_area(std::span<const Point2> ring) {
  if (ring.size() < 3) return 0.0;
  double twice = 0.0;
  const Point2 o = ring.front();
  for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
    twice += cross(ring[i] - o, ring[i + 1] - o);
  }
  return 0.5 * twice;
}

double distance_to_line(Point2 p, const Line& line) {
  return std::abs(cross(line.direction, p - line.point));
}

double distance_to_segment(Point2 p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

}  // namespace vorinv
