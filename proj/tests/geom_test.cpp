// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vorinv/error.hpp"
#include "vorinv/geom.hpp"

namespace vorinv {
namespace {

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance({0, 0}, {0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(distance({1, 2}, {4, 6}), 5.0);
}

TEST(Distance, SymmetricAndTriangle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 200; ++i) {
    const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    EXPECT_EQ(distance(a, b), distance(b, a));
    EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-12);
  }
}

void expect_parallel(Point2 d, Point2 expected) {
  EXPECT_NEAR(norm(d), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(cross(d, normalized(expected))), 0.0, 1e-15);
}

TEST(PerpendicularBisector, AxisAlignedAndDiagonal) {
  Line l = perpendicular_bisector({{0, 0}, {2, 0}});
  EXPECT_EQ(l.point, (Point2{1, 0}));
  expect_parallel(l.direction, {0, 1});

  l = perpendicular_bisector({{0, 0}, {0, 2}});
  EXPECT_EQ(l.point, (Point2{0, 1}));
  expect_parallel(l.direction, {1, 0});

  l = perpendicular_bisector({{0, 0}, {2, 2}});
  EXPECT_EQ(l.point, (Point2{1, 1}));
  expect_parallel(l.direction, {-1, 1});
}

TEST(PerpendicularBisector, PointsOnLineAreEquidistant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const Line l = perpendicular_bisector(s);
    const Point2 q = l.point + u(rng) * l.direction;
    EXPECT_NEAR(distance(q, s.a), distance(q, s.b), 1e-12);
  }
}

TEST(PerpendicularBisector, DegenerateSegment) {
  try {
    perpendicular_bisector({{1, 1}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSegment);
  }
}

TEST(Circumcircle, Examples) {
  Circle c = circumcircle({0, 0}, {2, 0}, {0, 2});
  EXPECT_NEAR(c.center.x, 1.0, 1e-15);
  EXPECT_NEAR(c.center.y, 1.0, 1e-15);
  EXPECT_NEAR(c.radius, std::sqrt(2.0), 1e-15);

  c = circumcircle({-1, 0}, {1, 0}, {0, 1});
  EXPECT_NEAR(c.center.x, 0.0, 1e-15);
  EXPECT_NEAR(c.center.y, 0.0, 1e-15);
  EXPECT_NEAR(c.radius, 1.0, 1e-15);
}

// Oracle: the circumcenter is where two perpendicular bisectors cross.
TEST(Circumcircle, MatchesBisectorIntersection) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  int checked = 0;
  while (checked < 500) {
    const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    if (std::abs(cross(b - a, c - a)) < 1e-3) continue;
    const Line l1 = perpendicular_bisector({a, b});
    const Line l2 = perpendicular_bisector({a, c});
    const double t = cross(l2.point - l1.point, l2.direction) / cross(l1.direction, l2.direction);
    const Point2 oracle = l1.point + t * l1.direction;
    const Circle circ = circumcircle(a, b, c);
    EXPECT_LT(distance(circ.center, oracle), 1e-9);
    EXPECT_NEAR(distance(circ.center, c), circ.radius, 1e-9);
    ++checked;
  }
}

TEST(Circumcircle, Collinear) {
  try {
    circumcircle({0, 0}, {1, 1}, {3, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CollinearPoints);
  }
}

TEST(RayIntersection, Examples) {
  auto p = ray_intersection(make_ray({0, 0}, {1, 0}), make_ray({2, 2}, {0, -1}));
  ASSERT_TRUE(p);
  EXPECT_NEAR(p->x, 2.0, 1e-15);
  EXPECT_NEAR(p->y, 0.0, 1e-15);

  EXPECT_FALSE(ray_intersection(make_ray({0, 0}, {1, 0}), make_ray({0, 1}, {1, 0})));

  p = ray_intersection(make_ray({0, 0}, {1, 1}), make_ray({2, 0}, {-1, 1}));
  ASSERT_TRUE(p);
  EXPECT_NEAR(p->x, 1.0, 1e-15);
  EXPECT_NEAR(p->y, 1.0, 1e-15);
}

TEST(RayIntersection, BehindOriginIsNoIntersection) {
  EXPECT_FALSE(ray_intersection(make_ray({0, 0}, {-1, 0}), make_ray({2, 2}, {0, -1})));
}

TEST(RayIntersection, Symmetric) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const Ray a = make_ray({u(rng), u(rng)}, {u(rng), u(rng)});
    const Ray b = make_ray({u(rng), u(rng)}, {u(rng), u(rng)});
    const auto ab = ray_intersection(a, b);
    const auto ba = ray_intersection(b, a);
    ASSERT_EQ(ab.has_value(), ba.has_value());
    if (ab) {
      EXPECT_EQ(*ab, *ba);
    }
  }
}

TEST(AngleAt, Examples) {
  EXPECT_NEAR(angle_at({0, 0}, {1, 0}, {0, 1}), kPi / 2, 1e-15);
  EXPECT_NEAR(angle_at({0, 0}, {1, 0}, {-1, 0}), kPi, 1e-15);
  EXPECT_NEAR(angle_at({1, 1}, {2, 1}, {2, 2}), kPi / 4, 1e-15);
}

TEST(AngleAt, Degenerate) {
  try {
    angle_at({0, 0}, {0, 0}, {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateAngle);
  }
}

TEST(CcwAngle, Range) {
  EXPECT_NEAR(ccw_angle({1, 0}, {0, 1}), kPi / 2, 1e-15);
  EXPECT_NEAR(ccw_angle({0, 1}, {1, 0}), 3 * kPi / 2, 1e-15);
  EXPECT_EQ(ccw_angle({1, 0}, {2, 0}), 0.0);
}

TEST(SignedArea, UnitSquare) {
  const Point2 ccw[] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Point2 cw[] = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  EXPECT_DOUBLE_EQ(signed_area(ccw), 1.0);
  EXPECT_DOUBLE_EQ(signed_area(cw), -1.0);
}

TEST(DistanceToSegment, Endpoints) {
  const Segment s{{0, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(distance_to_segment({1, 1}, s), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_segment({3, 0}, s), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_line({3, 5}, {{0, 0}, {1, 0}}), 5.0);
}

}  // namespace
}  // namespace vorinv
