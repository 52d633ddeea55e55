// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "vorinv/geom.hpp"

namespace vorinv::detail {

//! Uniform bucket grid over a fixed point set for nearest and ring queries.
class PointIndex {
 public:
  //! `extent`, when given, is folded into the grid so queries inside it get
  //! tight ring bounds.
  explicit PointIndex(std::span<const Point2> points, const Rect* extent = nullptr,
                      double per_bucket = 2.0)
      : points_(points.begin(), points.end()) {
    if (points_.empty()) return;
    xmin_ = xmax_ = points_[0].x;
    ymin_ = ymax_ = points_[0].y;
    if (extent != nullptr) {
      xmin_ = std::min(xmin_, extent->xmin);
      xmax_ = std::max(xmax_, extent->xmax);
      ymin_ = std::min(ymin_, extent->ymin);
      ymax_ = std::max(ymax_, extent->ymax);
    }
    for (const Point2& p : points_) {
      xmin_ = std::min(xmin_, p.x);
      xmax_ = std::max(xmax_, p.x);
      ymin_ = std::min(ymin_, p.y);
      ymax_ = std::max(ymax_, p.y);
    }
    const double w = std::max(xmax_ - xmin_, 1e-300);
    const double h = std::max(ymax_ - ymin_, 1e-300);
    const double buckets = std::max(1.0, static_cast<double>(points_.size()) / per_bucket);
    cell_ = std::sqrt(w * h / buckets);
    if (!(cell_ > 0.0)) cell_ = std::max(w, h);
    nx_ = std::clamp<long>(static_cast<long>(w / cell_) + 1, 1, 1 << 15);
    ny_ = std::clamp<long>(static_cast<long>(h / cell_) + 1, 1, 1 << 15);
    cell_ = std::max(w / static_cast<double>(nx_), h / static_cast<double>(ny_));
    start_.assign(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    std::vector<std::size_t> bucket(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      bucket[i] = bucket_of(points_[i]);
      ++start_[bucket[i] + 1];
    }
    for (std::size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];
    items_.resize(points_.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points_.size(); ++i) items_[fill[bucket[i]]++] = i;
  }

  std::size_t size() const { return points_.size(); }

  //! Visit buckets in square rings around q. `visit(lower_bound, indices)` is
  //! called per ring with a lower bound on the distance from q to any point in
  //! that ring or beyond; return false to stop.
  template <class Visit>
  void for_each_ring(Point2 q, Visit&& visit) const {
    if (points_.empty()) return;
    const long cx = clamp_x(q.x);
    const long cy = clamp_y(q.y);
    const long max_ring = std::max(nx_, ny_);
    std::vector<std::size_t> ring;
    for (long r = 0; r <= max_ring; ++r) {
      ring.clear();
      for (long y = cy - r; y <= cy + r; ++y) {
        if (y < 0 || y >= ny_) continue;
        const bool edge_row = (y == cy - r || y == cy + r);
        for (long x = cx - r; x <= cx + r; x += (edge_row || r == 0) ? 1 : 2 * r) {
          if (x < 0 || x >= nx_) continue;
          const std::size_t b = static_cast<std::size_t>(y * nx_ + x);
          for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) ring.push_back(items_[k]);
        }
      }
      if (!visit(lower_bound(q, r), std::span<const std::size_t>(ring))) return;
    }
  }

  //! Nearest point; ties resolved toward the lowest index.
  std::size_t nearest(Point2 q) const {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    double best_d2 = std::numeric_limits<double>::infinity();
    for_each_ring(q, [&](double bound, std::span<const std::size_t> ids) {
      if (bound * bound > best_d2) return false;
      for (std::size_t i : ids) {
        const Point2 d = points_[i] - q;
        const double d2 = d.x * d.x + d.y * d.y;
        if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
          best_d2 = d2;
          best = i;
        }
      }
      return true;
    });
    return best;
  }

  template <class Fn>
  void for_each_within(Point2 q, double radius, Fn&& fn) const {
    for_each_ring(q, [&](double bound, std::span<const std::size_t> ids) {
      if (bound > radius) return false;
      for (std::size_t i : ids) {
        if (distance(points_[i], q) <= radius) fn(i);
      }
      return true;
    });
  }

 private:
  long clamp_x(double x) const {
    return std::clamp<long>(static_cast<long>(std::floor((x - xmin_) / cell_)), 0, nx_ - 1);
  }
  long clamp_y(double y) const {
    return std::clamp<long>(static_cast<long>(std::floor((y - ymin_) / cell_)), 0, ny_ - 1);
  }
  std::size_t bucket_of(Point2 p) const {
    return static_cast<std::size_t>(clamp_y(p.y) * nx_ + clamp_x(p.x));
  }
  // Points in ring r are outside the (2r-1)x(2r-1) block around q's bucket;
  // q may itself lie outside the grid, so measure to that block's boundary.
  double lower_bound(Point2 q, long r) const {
    if (r == 0) return 0.0;
    const long cx = clamp_x(q.x);
    const long cy = clamp_y(q.y);
    const double bx0 = xmin_ + static_cast<double>(cx - r + 1) * cell_;
    const double bx1 = xmin_ + static_cast<double>(cx + r) * cell_;
    const double by0 = ymin_ + static_cast<double>(cy - r + 1) * cell_;
    const double by1 = ymin_ + static_cast<double>(cy + r) * cell_;
    const double dx = std::min(q.x - bx0, bx1 - q.x);
    const double dy = std::min(q.y - by0, by1 - q.y);
    return std::max(0.0, std::min(dx, dy));
  }

  std::vector<Point2> points_;
  double xmin_ = 0, xmax_ = 0, ymin_ = 0, ymax_ = 0;
  double cell_ = 1.0;
  long nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> items_;
};

}  // namespace vorinv::detail
