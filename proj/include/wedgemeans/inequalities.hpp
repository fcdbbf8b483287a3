#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/gram.hpp"
#include "wedgemeans/maclaurin.hpp"
#include "wedgemeans/power_means.hpp"

namespace wedgemeans {

/// Newton-form probe on p = 1 sums:
///   (S_k/binom)^2 - (S_{k-1}/binom)(S_{k+1}/binom).
/// Positive means the log-concavity step holds. The sign is not guaranteed
/// in general; callers record the margin rather than asserting it.
inline double check_vector_newton(const VectorFamily& family, int k,
                                  std::uint64_t cap = kDefaultSubsetCap) {
  const int d = family.dim();
  const int m = family.count();
  if (m < d) throw BadShape("check_vector_newton: need m >= d");
  if (k < 2 || k > d - 1) throw BadShape("check_vector_newton: need 2 <= k <= d-1");
  const PowerExponent one = PowerExponent::finite(1.0);
  const auto normalized = [&](int j) {
    const SymmetricSumValue s = s_k_p(family, j, one, cap);
    return s.raw_sum / static_cast<double>(s.subset_count);
  };
  const double mid = normalized(k);
  return mid * mid - normalized(k - 1) * normalized(k + 1);
}

/// margin and degeneracy flag for Szasz's principal-minor inequality.
struct SzaszResult {
  double margin = 0.0;   // RHS - LHS; >= -tol means the inequality holds
  bool zero_minor = false;  // some principal minor vanished; holds by convention
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Szasz's inequality between geometric means of principal minors:
///   (prod over |A|=k of det M_A)^{1/binom(n-1,k-1)}
///     <= (prod over |B|=k-1 of det M_B)^{1/binom(n-1,k-2)}.
/// Products are evaluated in log space. A zero minor degenerates the
/// comparison; the result is then flagged and holds by convention.
inline SzaszResult check_szasz(const GramMatrix& matrix, int k,
                               std::uint64_t cap = kDefaultSubsetCap) {
  const int n = matrix.order();
  if (k <= 1 || k >= n) throw BadShape("check_szasz: need 1 < k < order");

  const auto log_mean = [&](int size, double exponent_denom, bool& zero) {
    CompensatedSum logs;
    for_each_subset(
        n, size,
        [&](const std::vector<int>& idx) {
          const double det = detail::clamped_principal_det(matrix.entries(), idx);
          if (det == 0.0) {
            zero = true;
          } else {
            logs.add(std::log(det));
          }
        },
        cap);
    return logs.value() / exponent_denom;
  };

  SzaszResult out;
  bool zero = false;
  const double lhs_log = log_mean(k, static_cast<double>(binomial(n - 1, k - 1)), zero);
  const double rhs_log =
      log_mean(k - 1, static_cast<double>(binomial(n - 1, k - 2)), zero);
  if (zero) {
    out.zero_minor = true;
    return out;
  }
  out.lhs = std::exp(lhs_log);
  out.rhs = std::exp(rhs_log);
  out.margin = out.rhs - out.lhs;
  return out;
}

/// Ratio and bound of the dimension-free constant-factor chain step
///   M_{k,1} <= 2(d-k+1)/(d-k+2) * M_{k-1,1},  m = d, 2 < k <= d.
struct NonSharpResult {
  double ratio = 0.0;  // M_{k,1} / M_{k-1,1}
  double bound = 0.0;  // 2(d-k+1)/(d-k+2)
};

inline NonSharpResult check_nonsharp(const VectorFamily& family, int k,
                                     std::uint64_t cap = kDefaultSubsetCap) {
  const int d = family.dim();
  if (family.count() != d) throw BadShape("check_nonsharp: need m = d");
  if (k <= 2 || k > d) throw BadShape("check_nonsharp: need 2 < k <= d");
  const PowerExponent one = PowerExponent::finite(1.0);
  const double hi = s_k_p(family, k, one, cap).mean;
  const double lo = s_k_p(family, k - 1, one, cap).mean;
  if (lo <= 0.0) {
    throw ZeroDenominator("check_nonsharp: M_{k-1,1} vanishes (rank-deficient family)");
  }
  NonSharpResult out;
  out.ratio = hi / lo;
  out.bound = 2.0 * (d - k + 1) / static_cast<double>(d - k + 2);
  return out;
}

}  // namespace wedgemeans
