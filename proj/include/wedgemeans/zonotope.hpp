#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/gram.hpp"
#include "wedgemeans/numeric.hpp"
#include "wedgemeans/subsets.hpp"
#include "wedgemeans/wedge.hpp"

namespace wedgemeans {

/// Minkowski sum of centered segments: Z = sum_i weight_i * [-v_i, v_i].
/// The default weight 1/2 makes each segment have length ||v_i||.
class Zonotope {
 public:
  explicit Zonotope(VectorFamily generators, std::vector<double> weights = {})
      : generators_(std::move(generators)), weights_(std::move(weights)) {
    if (weights_.empty()) {
      weights_.assign(static_cast<std::size_t>(generators_.count()), 0.5);
    }
    if (static_cast<int>(weights_.size()) != generators_.count()) {
      throw BadShape("Zonotope: one weight per generator required");
    }
    for (double w : weights_) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw BadShape("Zonotope: weights must be positive");
      }
    }
  }

  const VectorFamily& generators() const { return generators_; }
  const std::vector<double>& weights() const { return weights_; }
  int dim() const { return generators_.dim(); }
  int count() const { return generators_.count(); }

 private:
  VectorFamily generators_;
  std::vector<double> weights_;
};

/// V_0..V_{k_max}; V_0 = 1 by convention.
struct IntrinsicVolumeVector {
  std::vector<double> values;
  double operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
  int k_max() const { return static_cast<int>(values.size()) - 1; }
};

/// h_Z(u) = sum_i weight_i * |<u, v_i>|; positively 1-homogeneous in u.
inline double support_function(const Zonotope& z, const Eigen::VectorXd& u) {
  if (u.size() != z.dim()) throw BadShape("support_function: direction has wrong dimension");
  CompensatedSum s;
  for (int i = 0; i < z.count(); ++i) {
    s.add(z.weights()[i] * std::abs(u.dot(z.generators().vector(i))));
  }
  return s.value();
}

namespace detail {

inline double subset_weight(const std::vector<double>& weights,
                            const std::vector<int>& idx) {
  double w = 1.0;
  for (int i : idx) w *= 2.0 * weights[i - 1];
  return w;
}

}  // namespace detail

/// k-th intrinsic volume: the wedge-volume sum over k-subsets of generators,
/// each term scaled by prod 2*weight. Default weights make this exactly the
/// symmetric sum S_k of the generator family. V_0 = 1.
inline double intrinsic_volume(const Zonotope& z, int k,
                               std::uint64_t cap = kDefaultSubsetCap) {
  if (k < 0 || k > z.dim()) throw BadShape("intrinsic_volume: need 0 <= k <= d");
  if (k == 0) return 1.0;
  if (k > z.count()) return 0.0;  // fewer than k segments
  const GramMatrix g = gram(z.generators());
  CompensatedSum sum;
  for_each_subset(
      z.count(), k,
      [&](const std::vector<int>& idx) {
        sum.add(detail::subset_weight(z.weights(), idx) *
                detail::wedge_from_gram(g.entries(), idx));
      },
      cap);
  return sum.value();
}

inline IntrinsicVolumeVector intrinsic_volumes(const Zonotope& z, int k_max,
                                               std::uint64_t cap = kDefaultSubsetCap) {
  if (k_max < 0 || k_max > z.dim()) throw BadShape("intrinsic_volumes: need 0 <= k_max <= d");
  IntrinsicVolumeVector out;
  out.values.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) out.values.push_back(intrinsic_volume(z, k, cap));
  return out;
}

/// Generators replaced by their components orthogonal to the unit direction
/// u; weights and ambient dimension are preserved (the projected zonotope
/// lives in the hyperplane but keeps R^d coordinates).
inline Zonotope project_generators(const Zonotope& z, const Eigen::VectorXd& u) {
  if (u.size() != z.dim()) throw BadShape("project_generators: direction has wrong dimension");
  if (std::abs(u.norm() - 1.0) > 1e-12) {
    throw NonUnitDirection("project_generators: direction must be unit length");
  }
  Eigen::MatrixXd cols = z.generators().columns();
  for (int i = 0; i < cols.cols(); ++i) {
    cols.col(i) -= u.dot(cols.col(i)) * u;
  }
  return Zonotope(VectorFamily(z.dim(), std::move(cols)), z.weights());
}

/// V_k of the projection of Z onto u's hyperplane, computed directly as
///   sum over k-subsets of (prod 2*weight) * |v_{i_1} ^ ... ^ v_{i_k} ^ u|,
/// i.e. without forming the projected generators. Must agree with
/// intrinsic_volume(project_generators(z, u), k); the two paths are kept
/// genuinely independent as an oracle pair.
inline double projected_intrinsic_volume(const Zonotope& z, const Eigen::VectorXd& u,
                                         int k, std::uint64_t cap = kDefaultSubsetCap) {
  if (u.size() != z.dim()) throw BadShape("projected_intrinsic_volume: direction has wrong dimension");
  if (std::abs(u.norm() - 1.0) > 1e-12) {
    throw NonUnitDirection("projected_intrinsic_volume: direction must be unit length");
  }
  if (k < 0 || k > z.dim() - 1) {
    throw BadShape("projected_intrinsic_volume: need 0 <= k <= d-1");
  }
  if (k == 0) return 1.0;
  if (k > z.count()) return 0.0;
  // extend the family by u so |v_S ^ u| is a plain wedge volume
  Eigen::MatrixXd cols(z.dim(), z.count() + 1);
  cols.leftCols(z.count()) = z.generators().columns();
  cols.col(z.count()) = u;
  const GramMatrix g = gram(VectorFamily(z.dim(), std::move(cols)));
  CompensatedSum sum;
  std::vector<int> with_u(static_cast<std::size_t>(k) + 1);
  for_each_subset(
      z.count(), k,
      [&](const std::vector<int>& idx) {
        for (int i = 0; i < k; ++i) with_u[i] = idx[i];
        with_u[k] = z.count() + 1;
        sum.add(detail::subset_weight(z.weights(), idx) *
                detail::wedge_from_gram(g.entries(), with_u));
      },
      cap);
  return sum.value();
}

/// Margin of the projection-ratio inequality
///   V_{k-1}(pi Z)/V_{k-1}(Z) <= c * V_{k-2}(pi Z)/V_{k-2}(Z),
/// where c = 1 in the sharp form (a probe) and c = 2(d-k+1)/(d-k+2) in the
/// dimension-dependent constant form (asserted). Returns RHS - LHS.
struct ProjectionMargin {
  double margin = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
};

inline ProjectionMargin check_projection_inequality(const Zonotope& z,
                                                    const Eigen::VectorXd& u, int k,
                                                    bool sharp,
                                                    std::uint64_t cap = kDefaultSubsetCap) {
  const int d = z.dim();
  if (sharp ? (k < 2 || k > d) : (k < 3 || k > d)) {
    throw BadShape(sharp ? "check_projection_inequality: sharp form needs 2 <= k <= d"
                         : "check_projection_inequality: constant form needs 3 <= k <= d");
  }
  const double vk1 = intrinsic_volume(z, k - 1, cap);
  const double vk2 = intrinsic_volume(z, k - 2, cap);
  if (!(vk1 > 0.0) || !(vk2 > 0.0)) {
    throw ZeroDenominator("check_projection_inequality: V_{k-1}(Z) or V_{k-2}(Z) vanishes");
  }
  ProjectionMargin out;
  out.constant = sharp ? 1.0 : 2.0 * (d - k + 1) / static_cast<double>(d - k + 2);
  out.lhs = projected_intrinsic_volume(z, u, k - 1, cap) / vk1;
  out.rhs = out.constant * projected_intrinsic_volume(z, u, k - 2, cap) / vk2;
  out.margin = out.rhs - out.lhs;
  return out;
}

/// Log-concavity margins of the intrinsic-volume sequence:
///   V_j^2 - c * V_{j+1} V_{j-1}
/// with the stronger zonotope factor c = (j+1)(m-j+1)/(j(m-j)) (recorded only)
/// and the proven dimension-free factor c = (j+1)/j (asserted by callers).
struct McMullenMargins {
  double strong_margin = 0.0;
  double weak_margin = 0.0;
  double strong_factor = 0.0;
  double weak_factor = 0.0;
};

inline McMullenMargins check_mcmullen_zonotope(const Zonotope& z, int j,
                                               std::uint64_t cap = kDefaultSubsetCap) {
  const int d = z.dim();
  const int m = z.count();
  if (j < 1 || j > d - 1) throw BadShape("check_mcmullen_zonotope: need 1 <= j <= d-1");
  if (m <= j) throw BadShape("check_mcmullen_zonotope: need m > j");
  const double vj = intrinsic_volume(z, j, cap);
  const double vj_plus = intrinsic_volume(z, j + 1, cap);
  const double vj_minus = intrinsic_volume(z, j - 1, cap);
  McMullenMargins out;
  out.strong_factor =
      (static_cast<double>(j + 1) * (m - j + 1)) / (static_cast<double>(j) * (m - j));
  out.weak_factor = static_cast<double>(j + 1) / j;
  out.strong_margin = vj * vj - out.strong_factor * vj_plus * vj_minus;
  out.weak_margin = vj * vj - out.weak_factor * vj_plus * vj_minus;
  return out;
}

}  // namespace wedgemeans
