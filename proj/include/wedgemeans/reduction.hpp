#pragma once

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

namespace detail {

/// Sums of |v_pivot ^ v_S| and |v_S| over all j-subsets S of the indices
/// other than pivot (1-based). j = 0 uses the empty-wedge convention
/// |v_empty| = 1, so the numerator degenerates to ||v_pivot||.
struct RatioSums {
  double with_pivot = 0.0;
  double without_pivot = 0.0;
};

inline RatioSums ratio_sums(const Eigen::MatrixXd& gram, int m, int pivot, int j,
                            std::uint64_t cap = kDefaultSubsetCap) {
  CompensatedSum num;
  CompensatedSum den;
  std::vector<int> others;
  others.reserve(m - 1);
  for (int i = 1; i <= m; ++i) {
    if (i != pivot) others.push_back(i);
  }
  std::vector<int> with_pivot(j + 1);
  std::vector<int> bare(j);
  for_each_subset(
      m - 1, j,
      [&](const std::vector<int>& sel) {
        // sel indexes into `others`; merge pivot in sorted position
        int w = 0;
        bool placed = false;
        for (int s = 0; s < j; ++s) {
          const int v = others[sel[s] - 1];
          if (!placed && pivot < v) {
            with_pivot[w++] = pivot;
            placed = true;
          }
          with_pivot[w++] = v;
          bare[s] = v;
        }
        if (!placed) with_pivot[w++] = pivot;
        num.add(wedge_from_gram(gram, with_pivot));
        den.add(j == 0 ? 1.0 : wedge_from_gram(gram, bare));
      },
      cap);
  return {num.value(), den.value()};
}

}  // namespace detail

/// The quotient R(pivot, j) = sum |v_pivot ^ v_S| / sum |v_S| over j-subsets
/// S of the other indices. R(pivot, 0) = ||v_pivot|| exactly. pivot is
/// 1-based; requires m = d and 0 <= j <= d-1 (the numerator wedge takes
/// j+1 <= d vectors; j = d-1 is the single full-complement term).
inline double ratio_R(const VectorFamily& family, int pivot, int j,
                      std::uint64_t cap = kDefaultSubsetCap) {
  const int d = family.dim();
  const int m = family.count();
  if (m != d) throw BadShape("ratio_R: need m = d");
  if (pivot < 1 || pivot > m) throw BadShape("ratio_R: pivot out of range");
  if (j < 0 || j > d - 1) throw BadShape("ratio_R: need 0 <= j <= d-1");
  const GramMatrix g = gram(family);
  const auto sums = detail::ratio_sums(g.entries(), m, pivot, j, cap);
  if (!(sums.without_pivot > 0.0)) {
    throw ZeroDenominator("ratio_R: denominator sum of wedge volumes is zero");
  }
  return sums.with_pivot / sums.without_pivot;
}

/// The two consecutive ratios of the chain-reduction step, with pivot 1:
/// feasible means R(1, k-1) <= R(1, k-2) + tol, i.e. a replacement norm
/// exists between them.
struct RatioPair {
  int pivot = 1;
  int j_hi = 0;  // k-1
  int j_lo = 0;  // k-2
  double r_hi = 0.0;
  double r_lo = 0.0;
  bool feasible = false;
};

inline RatioPair check_reduction(const VectorFamily& family, int k,
                                 double tol = 1e-10,
                                 std::uint64_t cap = kDefaultSubsetCap) {
  const int d = family.dim();
  if (family.count() != d) throw BadShape("check_reduction: need m = d");
  if (k < 2 || k > d) throw BadShape("check_reduction: need 2 <= k <= d");
  RatioPair out;
  out.pivot = 1;
  out.j_hi = k - 1;
  out.j_lo = k - 2;
  out.r_hi = ratio_R(family, 1, k - 1, cap);
  out.r_lo = ratio_R(family, 1, k - 2, cap);
  out.feasible = out.r_hi <= out.r_lo + tol;
  return out;
}

/// Hat-sum inequality on a full family u_1..u_d in R^d:
///   sum_{j=2..d} |u_1 ^ ... ^ u_j-hat ^ ... ^ u_d| * ||u_j||
///     >= |u_2 ^ ... ^ u_d| * ||u_1||.
/// Returns LHS - RHS; the inequality guarantees it is >= 0 up to noise.
inline double check_claim(const VectorFamily& family) {
  const int d = family.dim();
  const int m = family.count();
  if (m != d || d < 2) throw BadShape("check_claim: need m = d >= 2");
  const GramMatrix g = gram(family);
  CompensatedSum lhs;
  std::vector<int> idx(d - 1);
  for (int j = 2; j <= d; ++j) {
    int w = 0;
    for (int i = 1; i <= d; ++i) {
      if (i != j) idx[w++] = i;
    }
    lhs.add(detail::wedge_from_gram(g.entries(), idx) * family.norm_of(j - 1));
  }
  int w = 0;
  for (int i = 2; i <= d; ++i) idx[w++] = i;
  const double rhs = detail::wedge_from_gram(g.entries(), idx) * family.norm_of(0);
  return lhs.value() - rhs;
}

}  // namespace wedgemeans
