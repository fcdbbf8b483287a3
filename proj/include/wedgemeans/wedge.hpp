#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/gram.hpp"
#include "wedgemeans/subsets.hpp"

namespace wedgemeans {

namespace detail {

/// |v_{i1} ^ ... ^ v_{ik}| from a precomputed Gram matrix; idx is a sorted
/// 1-based subset. This is the hot path shared by every symmetric sum.
inline double wedge_from_gram(const Eigen::MatrixXd& gram,
                              const std::vector<int>& idx) {
  if (idx.size() == 1) {
    // single index: exactly the vector norm
    const double g = gram(idx[0] - 1, idx[0] - 1);
    if (g < 0.0) throw DegenerateGram("negative squared norm");
    return std::sqrt(g);
  }
  return std::sqrt(clamped_principal_det(gram, idx));
}

}  // namespace detail

/// k-dimensional volume of the parallelotope spanned by the subset's
/// vectors: sqrt of the Gram principal minor. Requires k <= min(d, m).
inline double wedge_volume(const VectorFamily& family, const SubsetIndex& subset) {
  const int k = subset.size();
  if (k > family.dim() || k > family.count()) {
    throw BadShape("wedge_volume: subset size exceeds min(dim, count)");
  }
  if (k == 0) return 1.0;
  if (k == 1) return family.norm_of(subset[0] - 1);
  const GramMatrix g = gram(family);
  return detail::wedge_from_gram(g.entries(), subset.indices());
}

/// Component of `target` orthogonal to span{family[subset]}. The subset's
/// vectors must be linearly independent (positive wedge volume).
inline Eigen::VectorXd project_complement(const VectorFamily& family,
                                          const SubsetIndex& subset,
                                          const Eigen::VectorXd& target) {
  if (target.size() != family.dim()) {
    throw BadShape("project_complement: target has wrong dimension");
  }
  if (subset.size() == 0) return target;
  if (wedge_volume(family, subset) == 0.0) {
    throw DegenerateSpan("project_complement: subset spans a degenerate subspace");
  }
  Eigen::MatrixXd basis(family.dim(), subset.size());
  for (int j = 0; j < subset.size(); ++j) {
    basis.col(j) = family.vector(subset[j] - 1);
  }
  // least-squares projection onto span(basis)
  Eigen::VectorXd coeffs = basis.colPivHouseholderQr().solve(target);
  return target - basis * coeffs;
}

/// Elementary symmetric polynomial e_k of a list of reals, computed by the
/// triangular coefficient recurrence (one pass per value). e_0 = 1.
inline double elementary_symmetric(const std::vector<double>& values, int k) {
  const int n = static_cast<int>(values.size());
  if (k < 0 || k > n) throw BadShape("elementary_symmetric: need 0 <= k <= n");
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const int top = std::min(i + 1, k);
    for (int j = top; j >= 1; --j) e[j] += values[i] * e[j - 1];
  }
  return e[k];
}

}  // namespace wedgemeans
