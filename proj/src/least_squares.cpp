// SPDX-License-Identifier: Apache-2.0
//
// Generator recovery from the perpendicular-bisector relation. For every edge
// shared by polygons k and l, with endpoints s and t and unit direction
// e = (s - t) / |s - t|:
//
//   (x_k - x_l) e1 + (y_k - y_l) e2 = 0                      (perpendicular)
//   e2 (x_k + x_l) / 2 - e1 (y_k + y_l) / 2 + t2 e1 - t1 e2 = 0  (midpoint on edge line)
//
// Both rows are the textbook conditions divided by |s - t|; the second is
// written without the slope so vertical edges need no special case.
#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>
#include <cmath>
#include <limits>

#include "vorinv/error.hpp"
#include "vorinv/invert.hpp"

namespace vorinv {

namespace {

// Above this many unknowns the SVD gets expensive; switch to sparse QR.
constexpr std::size_t kDenseUnknownLimit = 2000;

struct Row {
  std::size_t k, l;
  double ck[2];  // coefficients on (x_k, y_k)
  double cl[2];  // coefficients on (x_l, y_l)
  double rhs;
};

}  // namespace

GeneratorEstimate invert_least_squares(const Tessellation& t, std::span<const Polygon> polygons,
                                       const InvertOptions& options) {
  const std::size_t n = polygons.size();
  std::vector<Row> rows;
  std::vector<std::size_t> edges_of(n, 0);
  for (const EdgeFaces& ef : edge_faces(t, polygons)) {
    if (!ef.left || !ef.right || *ef.left == *ef.right) continue;
    const Point2 s = t.vertices[ef.u];
    const Point2 e_t = t.vertices[ef.v];
    const double len = distance(s, e_t);
    if (!(len > 0.0)) continue;
    const Point2 e = (s - e_t) / len;
    const std::size_t k = *ef.left;
    const std::size_t l = *ef.right;
    rows.push_back({k, l, {e.x, e.y}, {-e.x, -e.y}, 0.0});
    rows.push_back({k, l, {0.5 * e.y, -0.5 * e.x}, {0.5 * e.y, -0.5 * e.x},
                    -(e_t.y * e.x - e_t.x * e.y)});
    ++edges_of[k];
    ++edges_of[l];
  }
  for (const KnownGenerator& kg : options.known) {
    if (kg.polygon >= n || !is_finite(kg.position)) {
      throw Error(ErrorKind::InvalidArgument, "known generator for polygon " +
                                                  std::to_string(kg.polygon) + " is invalid");
    }
    rows.push_back({kg.polygon, kg.polygon, {1.0, 0.0}, {0.0, 0.0}, kg.position.x});
    rows.push_back({kg.polygon, kg.polygon, {0.0, 1.0}, {0.0, 0.0}, kg.position.y});
  }
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = 2 * n;
  if (n == 0 || n_rows < n_cols) {
    throw Error(ErrorKind::TooFewEdges, std::to_string(n_rows / 2) + " constraint pairs for " +
                                            std::to_string(n) + " polygons");
  }

  GeneratorEstimate est;
  est.method = Method::LeastSquares;
  LeastSquaresDiagnostics ls;
  ls.equations = n_rows;
  ls.unknowns = n_cols;

  Eigen::VectorXd b(static_cast<Eigen::Index>(n_rows));
  for (std::size_t r = 0; r < n_rows; ++r) b[static_cast<Eigen::Index>(r)] = rows[r].rhs;
  Eigen::VectorXd x;

  const auto col = [](std::size_t poly, int c) { return static_cast<Eigen::Index>(2 * poly + c); };

  if (n_cols <= kDenseUnknownLimit) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_rows),
                                              static_cast<Eigen::Index>(n_cols));
    for (std::size_t r = 0; r < n_rows; ++r) {
      const auto ri = static_cast<Eigen::Index>(r);
      for (int c = 0; c < 2; ++c) {
        a(ri, col(rows[r].k, c)) += rows[r].ck[c];
        a(ri, col(rows[r].l, c)) += rows[r].cl[c];
      }
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(options.rank_tolerance);
    x = svd.solve(b);  // minimum-norm least-squares solution
    const auto& sv = svd.singularValues();
    ls.rank = static_cast<std::size_t>(svd.rank());
    const double smin = sv[sv.size() - 1];
    ls.condition_number = smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
    ls.residual_norm = (a * x - b).norm();
  } else {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
      const auto ri = static_cast<Eigen::Index>(r);
      for (int c = 0; c < 2; ++c) {
        trip.emplace_back(ri, col(rows[r].k, c), rows[r].ck[c]);
        trip.emplace_back(ri, col(rows[r].l, c), rows[r].cl[c]);
      }
    }
    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();
    Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
    qr.setPivotThreshold(options.rank_tolerance);
    qr.compute(a);
    if (qr.info() != Eigen::Success) {
      throw Error(ErrorKind::RankDeficient, "sparse QR factorization failed");
    }
    x = qr.solve(b);
    ls.rank = static_cast<std::size_t>(qr.rank());
    // |R_ii| ratio: a cheap lower bound on the 2-norm condition number.
    const Eigen::VectorXd diag = Eigen::MatrixXd(qr.matrixR().diagonal()).cwiseAbs();
    const double dmax = diag.maxCoeff();
    const double dmin = diag.minCoeff();
    ls.condition_number = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
    ls.residual_norm = (a * x - b).norm();
    est.warnings.push_back("condition number estimated from the sparse QR diagonal");
  }

  ls.rank_deficient = ls.rank < n_cols;
  ls.ill_conditioned = !(ls.condition_number <= options.condition_warning);
  if (ls.rank_deficient) {
    est.warnings.push_back("RankDeficient: rank " + std::to_string(ls.rank) + " of " +
                           std::to_string(n_cols) + " unknowns; minimum-norm solution returned");
  }
  if (ls.ill_conditioned) {
    est.warnings.push_back("IllConditioned: condition number " + format_real(ls.condition_number));
  }

  est.positions.resize(n);
  est.per_polygon.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    est.positions[i] = {x[col(i, 0)], x[col(i, 1)]};
    est.per_polygon[i].n_pairs = edges_of[i];
    if (edges_of[i] == 0) est.warnings.push_back("polygon " + std::to_string(i) + " borders no shared edge");
  }
  // Per-polygon spread: largest residual among the equations it takes part in.
  for (const Row& r : rows) {
    const double res = std::abs(r.ck[0] * x[col(r.k, 0)] + r.ck[1] * x[col(r.k, 1)] +
                                r.cl[0] * x[col(r.l, 0)] + r.cl[1] * x[col(r.l, 1)] - r.rhs);
    est.per_polygon[r.k].spread = std::max(est.per_polygon[r.k].spread, res);
    est.per_polygon[r.l].spread = std::max(est.per_polygon[r.l].spread, res);
  }
  est.least_squares = ls;
  return est;
}

}  // namespace vorinv
