#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/subsets.hpp"

namespace wedgemeans {

/// Relative floor for eigenvalues of a Gram matrix: values in
/// [-kEigenClampRel * lambda_max, 0) are treated as exact zeros, anything
/// below that is an error, not noise.
inline constexpr double kEigenClampRel = 1e-9;

/// Eigenvalue products switch to log space at this size to avoid
/// under/overflow.
inline constexpr int kLogSpaceProductMinSize = 20;

/// m x m matrix of pairwise inner products. Symmetric by construction
/// (entries (i,j) and (j,i) are averaged); positive semidefinite up to the
/// eigenvalue clamp tolerance, which is enforced wherever eigenvalues are
/// actually computed.
class GramMatrix {
 public:
  explicit GramMatrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw BadShape("GramMatrix: matrix must be square and non-empty");
    }
    if (!m_.allFinite()) throw BadShape("GramMatrix: non-finite entry");
    const double scale = m_.cwiseAbs().maxCoeff();
    const double skew = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    if (skew > 1e-12 * scale) {
      throw BadShape("GramMatrix: matrix is not symmetric");
    }
    m_ = ((m_ + m_.transpose()) / 2.0).eval();
  }

  int order() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& entries() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// entries (i,j) = <v_i, v_j>, exactly symmetric.
inline GramMatrix gram(const VectorFamily& family) {
  Eigen::MatrixXd g = family.columns().transpose() * family.columns();
  return GramMatrix(((g + g.transpose()) / 2.0).eval());
}

/// Eigenvalues of a Gram matrix, sorted descending, with negatives in
/// [-tol, 0) clamped to zero. `clamp_applied` records whether any clamp
/// happened.
struct EigenSpectrum {
  std::vector<double> values;
  bool clamp_applied = false;
};

namespace detail {

/// Clamps an ascending eigenvalue array of a nominal-PSD matrix in place.
/// Throws DegenerateGram when a value sits below the floor.
inline bool clamp_psd_eigenvalues(Eigen::VectorXd& ev) {
  const int n = static_cast<int>(ev.size());
  const double lmax = std::max(ev(n - 1), 0.0);
  const double floor = -kEigenClampRel * lmax;
  bool clamped = false;
  for (int i = 0; i < n; ++i) {
    if (ev(i) >= 0.0) break;  // ascending order: negatives come first
    if (ev(i) < floor) {
      throw DegenerateGram("Gram eigenvalue " + std::to_string(ev(i)) +
                           " below clamp floor " + std::to_string(floor));
    }
    ev(i) = 0.0;
    clamped = true;
  }
  return clamped;
}

/// Product of a clamped nonnegative eigenvalue array; log space for large n.
inline double eigenvalue_product(const Eigen::VectorXd& ev) {
  const int n = static_cast<int>(ev.size());
  if (n < kLogSpaceProductMinSize) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= ev(i);
    return p;
  }
  double log_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (ev(i) == 0.0) return 0.0;
    log_sum += std::log(ev(i));
  }
  return std::exp(log_sum);
}

/// Determinant of the principal submatrix gram(idx, idx) via symmetric
/// eigendecomposition with PSD clamping; idx is a sorted 1-based subset.
/// Returns exactly 0 when any eigenvalue was clamped or is zero.
inline double clamped_principal_det(const Eigen::MatrixXd& gram,
                                    const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  if (k == 0) return 1.0;
  if (k == 1) {
    // a 1x1 principal submatrix is its own eigenvalue; the clamp floor is 0
    const double g = gram(idx[0] - 1, idx[0] - 1);
    if (g < 0.0) throw DegenerateGram("negative squared norm " + std::to_string(g));
    return g;
  }
  Eigen::MatrixXd sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub(a, b) = gram(idx[a] - 1, idx[b] - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  clamp_psd_eigenvalues(ev);
  return eigenvalue_product(ev);
}

}  // namespace detail

/// Clamped spectrum of the full Gram matrix, sorted descending.
inline EigenSpectrum eigen_spectrum(const GramMatrix& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.entries(),
                                                    Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  EigenSpectrum out;
  out.clamp_applied = detail::clamp_psd_eigenvalues(ev);
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

}  // namespace wedgemeans
