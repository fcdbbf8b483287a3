#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/power_means.hpp"
#include "wedgemeans/reduction.hpp"

namespace wedgemeans {

struct ReplacementResult {
  VectorFamily family;
  double lo = 0.0;  // R(pivot, k-1): smallest admissible replacement norm
  double hi = 0.0;  // R(pivot, k-2): largest admissible replacement norm
};

namespace detail {

/// Unit spanning vector of the 1-dimensional orthogonal complement of the
/// d-1 columns, sign fixed toward a positive leading coordinate.
inline Eigen::VectorXd complement_direction(const Eigen::MatrixXd& others) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(others, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (sv.size() > 0 && sv(sv.size() - 1) <= 1e-12 * smax) {
    throw DegenerateSpan("complement_direction: remaining vectors are dependent");
  }
  Eigen::VectorXd dir = svd.matrixU().col(others.rows() - 1);
  for (int i = 0; i < dir.size(); ++i) {
    if (std::abs(dir(i)) > 1e-12) {
      if (dir(i) < 0.0) dir = -dir;
      break;
    }
  }
  return dir;
}

}  // namespace detail

/// Replaces family[pivot] by a vector orthogonal to all the others whose
/// norm is the midpoint of [R(pivot,k-1), R(pivot,k-2)]. Inside that
/// interval S_k cannot decrease and S_{k-1} cannot increase; both are
/// verified on the result. pivot is 1-based; requires m = d.
inline ReplacementResult construct_orthogonal_replacement(
    const VectorFamily& family, int pivot, int k,
    std::uint64_t cap = kDefaultSubsetCap) {
  const int d = family.dim();
  if (family.count() != d) throw BadShape("construct_orthogonal_replacement: need m = d");
  if (k < 2 || k > d) throw BadShape("construct_orthogonal_replacement: need 2 <= k <= d");
  if (pivot < 1 || pivot > d) throw BadShape("construct_orthogonal_replacement: pivot out of range");

  const double lo = ratio_R(family, pivot, k - 1, cap);
  const double hi = ratio_R(family, pivot, k - 2, cap);
  if (lo > hi + 1e-10 * std::max(1.0, hi)) {
    throw InfeasibleInterval("construct_orthogonal_replacement: empty interval [" +
                                 std::to_string(lo) + ", " + std::to_string(hi) + "]",
                             pivot);
  }

  Eigen::MatrixXd others(d, d - 1);
  int w = 0;
  for (int i = 0; i < d; ++i) {
    if (i != pivot - 1) others.col(w++) = family.vector(i);
  }
  const Eigen::VectorXd dir = detail::complement_direction(others);
  const double norm = (lo + hi) / 2.0;
  ReplacementResult out{family.with_vector_replaced(pivot - 1, norm * dir), lo, hi};

  const PowerExponent one = PowerExponent::finite(1.0);
  const double sk_before = s_k_p(family, k, one, cap).raw_sum;
  const double sk_after = s_k_p(out.family, k, one, cap).raw_sum;
  const double sk1_before = s_k_p(family, k - 1, one, cap).raw_sum;
  const double sk1_after = s_k_p(out.family, k - 1, one, cap).raw_sum;
  const double slack_k = 1e-10 * std::max(sk_before, sk_after);
  const double slack_k1 = 1e-10 * std::max(sk1_before, sk1_after);
  if (sk_after < sk_before - slack_k || sk1_after > sk1_before + slack_k1) {
    throw Error("construct_orthogonal_replacement: sandwich postcondition failed");
  }
  return out;
}

/// Applies the orthogonal replacement at pivots 1..d in sequence,
/// re-checking interval feasibility at each step, and returns the resulting
/// pairwise-orthogonal family. Succeeds for every family when k is 2, 3 or
/// d; for other k an InfeasibleInterval carries the failing pivot.
inline VectorFamily monotone_orthogonalize(const VectorFamily& family, int k,
                                           std::uint64_t cap = kDefaultSubsetCap) {
  const int d = family.dim();
  if (family.count() != d) throw BadShape("monotone_orthogonalize: need m = d");
  if (k < 2 || k > d) throw BadShape("monotone_orthogonalize: need 2 <= k <= d");
  VectorFamily current = family;
  for (int pivot = 1; pivot <= d; ++pivot) {
    current = construct_orthogonal_replacement(current, pivot, k, cap).family;
  }
  return current;
}

}  // namespace wedgemeans
