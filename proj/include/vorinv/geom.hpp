// SPDX-License-Identifier: Apache-2.0
//
// Planar primitives shared by the rest of the library. Everything here is a
// pure function over small value types in double precision.
#pragma once

#include <cmath>
#include <optional>
#include <span>

namespace vorinv {

inline constexpr double kPi = 3.14159265358979323846;

//! Parallel-ray threshold on the cross product of unit directions.
inline constexpr double kParallelTolerance = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point2, Point2) = default;

  Point2& operator+=(Point2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline bool is_finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }
//! Counterclockwise quarter turn.
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }
Point2 normalized(Point2 a);
Point2 rotate(Point2 v, double angle);

struct Segment {
  Point2 a;
  Point2 b;
};

//! Half line; `direction` has unit length (use make_ray to normalize).
struct Ray {
  Point2 origin;
  Point2 direction;
};

Ray make_ray(Point2 origin, Point2 direction);

//! Infinite line through `point` along unit `direction`.
struct Line {
  Point2 point;
  Point2 direction;
};

struct Circle {
  Point2 center;
  double radius = 0.0;
};

//! Axis-aligned rectangle; used as the clip region of forward diagrams.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::hypot(width(), height()); }
  bool valid() const {
    return std::isfinite(xmin) && std::isfinite(ymin) && std::isfinite(xmax) &&
           std::isfinite(ymax) && xmin < xmax && ymin < ymax;
  }
  bool contains_strictly(Point2 p) const {
    return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
  }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

double distance(Point2 p, Point2 q);

//! Line of points equidistant from s.a and s.b, anchored at the midpoint.
Line perpendicular_bisector(const Segment& s);

Circle circumcircle(Point2 a, Point2 b, Point2 c);

//! Intersection of two half lines, or nullopt when they are parallel or do
//! not meet at nonnegative parameters.
std::optional<Point2> ray_intersection(const Ray& r1, const Ray& r2);

//! Same as ray_intersection but also yields the two ray parameters.
struct RayHit {
  Point2 point;
  double t1 = 0.0;
  double t2 = 0.0;
};
std::optional<RayHit> ray_intersection_params(const Ray& r1, const Ray& r2);

//! Unsigned angle in [0, pi] between (a - vertex) and (b - vertex).
double angle_at(Point2 vertex, Point2 a, Point2 b);

//! Counterclockwise angle in [0, 2pi) that rotates direction `from` onto `to`.
double ccw_angle(Point2 from, Point2 to);

//! Shoelace signed area; positive for counterclockwise order.
double signed_area(std::span<const Point2> ring);

//! Perpendicular distance from p to the infinite line.
double distance_to_line(Point2 p, const Line& line);
double distance_to_segment(Point2 p, const Segment& s);

}  // namespace vorinv
