#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/gram.hpp"
#include "wedgemeans/subsets.hpp"
#include "wedgemeans/wedge.hpp"

namespace wedgemeans {

namespace detail {

/// |w_1 ^ ... ^ w_n| for the columns of a square matrix, via the product of
/// singular values. The SVD keeps the relative error near kappa*eps even for
/// poorly conditioned simplices, where squaring through the Gram determinant
/// would lose half the digits; it also keeps this branch independent of the
/// linear-solve path it cross-checks.
inline double wedge_of_columns(const Eigen::MatrixXd& cols) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols);
  double v = 1.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) v *= svd.singularValues()(i);
  return v;
}

}  // namespace detail

/// Barycentric coordinates of `point` with respect to the simplex whose
/// vertices are the d columns of `vertices` (points in R^{d-1}). Solves the
/// affine system; for points inside the closed simplex the wedge-volume
/// formula is evaluated as an independent cross-check.
inline Eigen::VectorXd barycentric_coordinates(const Eigen::MatrixXd& vertices,
                                               const Eigen::VectorXd& point) {
  const int dm1 = static_cast<int>(vertices.rows());  // ambient dim d-1
  const int d = static_cast<int>(vertices.cols());
  if (d != dm1 + 1) {
    throw BadShape("barycentric_coordinates: need d vertices in R^{d-1}");
  }
  if (point.size() != dm1) {
    throw BadShape("barycentric_coordinates: point has wrong dimension");
  }

  // [ v_1 ... v_d ; 1 ... 1 ] beta = [ point ; 1 ]
  Eigen::MatrixXd sys(d, d);
  sys.topRows(dm1) = vertices;
  sys.row(dm1).setOnes();
  Eigen::VectorXd rhs(d);
  rhs.head(dm1) = point;
  rhs(dm1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  if (!lu.isInvertible()) {
    throw DegenerateSimplex("barycentric_coordinates: vertices are affinely dependent");
  }
  Eigen::VectorXd beta = lu.solve(rhs);

  // Wedge-volume branch, valid on the closed simplex: each coordinate is the
  // (d-1)-wedge of the edges from the point, over the simplex's edge wedge.
  bool interior = true;
  for (int j = 0; j < d; ++j) {
    if (beta(j) < -1e-9) interior = false;
  }
  if (interior) {
    Eigen::MatrixXd edges(dm1, dm1);
    for (int i = 1; i < d; ++i) edges.col(i - 1) = vertices.col(i) - vertices.col(0);
    const double denom = detail::wedge_of_columns(edges);
    if (denom == 0.0) {
      throw DegenerateSimplex("barycentric_coordinates: zero simplex volume");
    }
    Eigen::MatrixXd omit(dm1, dm1);
    for (int j = 0; j < d; ++j) {
      int w = 0;
      for (int i = 0; i < d; ++i) {
        if (i != j) omit.col(w++) = vertices.col(i) - point;
      }
      const double via_wedge = detail::wedge_of_columns(omit) / denom;
      if (std::abs(via_wedge - beta(j)) > 1e-8 * std::max(1.0, std::abs(beta(j)))) {
        throw Error("barycentric_coordinates: wedge-formula cross-check failed");
      }
    }
  }
  return beta;
}

}  // namespace wedgemeans
