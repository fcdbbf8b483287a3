#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/gram.hpp"
#include "wedgemeans/numeric.hpp"
#include "wedgemeans/subsets.hpp"
#include "wedgemeans/wedge.hpp"

namespace wedgemeans {

/// Exponent of the wedge-volume power mean: 0, a positive real, or infinity.
/// Negative exponents are deliberately excluded here; the search engine's
/// probe path evaluates them through raw doubles.
class PowerExponent {
 public:
  enum class Kind { zero, finite, infinity };

  static PowerExponent zero() { return PowerExponent(Kind::zero, 0.0); }
  static PowerExponent infinity() {
    return PowerExponent(Kind::infinity, std::numeric_limits<double>::infinity());
  }
  static PowerExponent finite(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw BadShape("PowerExponent::finite requires p > 0");
    }
    return PowerExponent(Kind::finite, p);
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  double p() const { return p_; }

  /// Value used in reports: 0, p, or +inf.
  double display_value() const { return p_; }

  std::string label() const {
    switch (kind_) {
      case Kind::zero: return "0";
      case Kind::infinity: return "inf";
      default: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", p_);
        return buf;
      }
    }
  }

 private:
  PowerExponent(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

/// One symmetric sum S_{k,p} with its normalized mean M_{k,p}.
/// raw_sum holds: sum of wedge^p (finite p), sum of log(wedge) over nonzero
/// terms (p = 0, with zero_wedges counting the vanished ones), or the max
/// wedge (p = inf).
struct SymmetricSumValue {
  int k = 0;
  PowerExponent p = PowerExponent::finite(1.0);
  double raw_sum = 0.0;
  double mean = 0.0;
  std::uint64_t subset_count = 0;
  std::uint64_t zero_wedges = 0;
  bool rank_deficient_k = false;  // k > dim: every wedge vanishes identically
};

/// Symmetric sum of wedge-volume powers over all k-subsets, with the
/// normalized mean M_{k,p} = (raw/binom)^{1/(k p)} and its p = 0 / p = inf
/// limits. Accepts k <= m; for k > dim the sums vanish identically and the
/// result is flagged instead of failing.
inline SymmetricSumValue s_k_p(const VectorFamily& family, int k, PowerExponent p,
                               std::uint64_t cap = kDefaultSubsetCap) {
  if (k < 1 || k > family.count()) {
    throw BadShape("s_k_p: need 1 <= k <= count");
  }
  SymmetricSumValue out;
  out.k = k;
  out.p = p;
  out.subset_count = binomial(family.count(), k);
  if (k > family.dim()) {
    if (out.subset_count > cap) {
      throw CapExceeded("s_k_p: subset count exceeds cap", out.subset_count);
    }
    out.rank_deficient_k = true;
    out.zero_wedges = out.subset_count;
    out.raw_sum = 0.0;
    out.mean = 0.0;
    return out;
  }

  const GramMatrix g = gram(family);
  const double nsub = static_cast<double>(out.subset_count);

  switch (p.kind()) {
    case PowerExponent::Kind::finite: {
      CompensatedSum sum;
      for_each_subset(
          family.count(), k,
          [&](const std::vector<int>& idx) {
            const double w = detail::wedge_from_gram(g.entries(), idx);
            if (w == 0.0) ++out.zero_wedges;
            sum.add(std::pow(w, p.p()));
          },
          cap);
      out.raw_sum = sum.value();
      out.mean = out.raw_sum <= 0.0
                     ? 0.0
                     : std::pow(out.raw_sum / nsub, 1.0 / (k * p.p()));
      break;
    }
    case PowerExponent::Kind::zero: {
      CompensatedSum log_sum;
      for_each_subset(
          family.count(), k,
          [&](const std::vector<int>& idx) {
            const double w = detail::wedge_from_gram(g.entries(), idx);
            if (w == 0.0) {
              ++out.zero_wedges;
            } else {
              log_sum.add(std::log(w));
            }
          },
          cap);
      out.raw_sum = log_sum.value();
      out.mean = out.zero_wedges > 0 ? 0.0 : std::exp(out.raw_sum / (nsub * k));
      break;
    }
    case PowerExponent::Kind::infinity: {
      double best = 0.0;
      for_each_subset(
          family.count(), k,
          [&](const std::vector<int>& idx) {
            const double w = detail::wedge_from_gram(g.entries(), idx);
            if (w == 0.0) ++out.zero_wedges;
            best = std::max(best, w);
          },
          cap);
      out.raw_sum = best;
      out.mean = std::pow(best, 1.0 / k);
      break;
    }
  }
  return out;
}

/// Sum of squared k-wedges via the spectrum: e_k of the Gram eigenvalues
/// equals the sum of all principal k-minors, so no subset enumeration is
/// needed. Cost is polynomial in m.
inline double s_k_2_eigen(const VectorFamily& family, int k) {
  if (k < 1 || k > family.count()) {
    throw BadShape("s_k_2_eigen: need 1 <= k <= count");
  }
  const EigenSpectrum spec = eigen_spectrum(gram(family));
  return elementary_symmetric(spec.values, k);
}

}  // namespace wedgemeans
