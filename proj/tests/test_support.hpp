#pragma once

// Shared helpers for the test suites: seeded generators and independent
// oracles. The oracles deliberately avoid the library's Gram-eigendecomposition
// route (wedges go through the SVD of the raw column block, subset sums
// through plain recursive enumeration) so agreement is meaningful.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "wedgemeans/family.hpp"

namespace wmtest {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = n(g);
  return m;
}

inline wedgemeans::VectorFamily gaussian_family(int m, int d, std::mt19937_64& g) {
  return wedgemeans::VectorFamily(d, gaussian_matrix(d, m, g));
}

/// Haar-ish random rotation: QR of a gaussian matrix with the R diagonal
/// sign fixed.
inline Eigen::MatrixXd random_rotation(int d, std::mt19937_64& g) {
  Eigen::MatrixXd a = gaussian_matrix(d, d, g);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

inline wedgemeans::VectorFamily orthonormal_family(int d, std::mt19937_64& g) {
  return wedgemeans::VectorFamily(d, random_rotation(d, g));
}

/// Oracle wedge volume: product of singular values of the column block.
inline double svd_wedge(const wedgemeans::VectorFamily& f, const std::vector<int>& idx1) {
  Eigen::MatrixXd b(f.dim(), static_cast<int>(idx1.size()));
  for (std::size_t j = 0; j < idx1.size(); ++j) b.col(static_cast<int>(j)) = f.vector(idx1[j] - 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  double v = 1.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) v *= svd.singularValues()(i);
  return v;
}

/// Plain recursive k-subset enumeration (1-based), independent of the
/// library's odometer enumerator.
inline void recursive_subsets(int m, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  const auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
}

/// Oracle for sums of wedge^p over all k-subsets, via SVD wedges and naive
/// accumulation.
inline double bf_wedge_power_sum(const wedgemeans::VectorFamily& f, int k, double p) {
  std::vector<std::vector<int>> subsets;
  recursive_subsets(f.count(), k, subsets);
  double s = 0.0;
  for (const auto& idx : subsets) s += std::pow(svd_wedge(f, idx), p);
  return s;
}

inline double bf_elementary_symmetric(const std::vector<double>& xs, int k) {
  std::vector<std::vector<int>> subsets;
  recursive_subsets(static_cast<int>(xs.size()), k, subsets);
  double s = 0.0;
  for (const auto& idx : subsets) {
    double prod = 1.0;
    for (int i : idx) prod *= xs[i - 1];
    s += prod;
  }
  return s;
}

}  // namespace wmtest
