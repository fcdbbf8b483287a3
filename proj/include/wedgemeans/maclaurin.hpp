#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/power_means.hpp"
#include "wedgemeans/wedge.hpp"

namespace wedgemeans {

enum class Verdict { holds, equality, violated };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    default: return "violated";
  }
}

/// Default absolute tolerance on normalized-mean margins.
inline constexpr double kDefaultMarginTol = 1e-10;
/// |margin| at or below this is reported as equality.
inline constexpr double kEqualityTol = 1e-12;

/// Chain of normalized means M_{k,p} for k = 1..k_max with the consecutive
/// margins M_{k-1} - M_k and one verdict per pair. Margins are on normalized
/// means, so the tolerance is scale-free.
struct MaclaurinReport {
  double p = 1.0;  // 0, finite (possibly negative for probes), or +inf
  std::vector<double> means;       // means[i] = M_{i+1,p}
  std::vector<double> margins;     // margins[i] = means[i] - means[i+1]
  std::vector<Verdict> verdicts;   // one per margin
  double tolerance = kDefaultMarginTol;

  Verdict overall() const {
    bool all_equal = true;
    for (Verdict v : verdicts) {
      if (v == Verdict::violated) return Verdict::violated;
      if (v != Verdict::equality) all_equal = false;
    }
    return (all_equal && !verdicts.empty()) ? Verdict::equality : Verdict::holds;
  }

  double worst_margin() const {
    double w = std::numeric_limits<double>::infinity();
    for (double m : margins) w = std::min(w, m);
    return w;
  }
};

namespace detail {

inline Verdict classify(double margin, double tol) {
  if (std::abs(margin) <= kEqualityTol) return Verdict::equality;
  if (margin < -tol) return Verdict::violated;
  return Verdict::holds;
}

inline void finish_report(MaclaurinReport& r) {
  r.margins.clear();
  r.verdicts.clear();
  for (std::size_t i = 0; i + 1 < r.means.size(); ++i) {
    const double margin = r.means[i] - r.means[i + 1];
    r.margins.push_back(margin);
    r.verdicts.push_back(classify(margin, r.tolerance));
  }
}

}  // namespace detail

/// Classical Maclaurin chain on positive reals:
/// means[k] = (e_k(xs) / binom(m,k))^{1/k}, nonincreasing in k.
inline MaclaurinReport check_classical_maclaurin(const std::vector<double>& xs,
                                                 double tol = kDefaultMarginTol) {
  if (xs.empty()) throw BadShape("check_classical_maclaurin: empty input");
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw NonPositiveInput("check_classical_maclaurin: inputs must be positive reals");
    }
  }
  const int m = static_cast<int>(xs.size());
  MaclaurinReport r;
  r.p = 1.0;
  r.tolerance = tol;
  for (int k = 1; k <= m; ++k) {
    const double ek = elementary_symmetric(xs, k);
    r.means.push_back(std::pow(ek / static_cast<double>(binomial(m, k)), 1.0 / k));
  }
  detail::finish_report(r);
  return r;
}

/// Vector-valued Maclaurin chain M_{1,p} >= M_{2,p} >= ... >= M_{k_max,p}.
/// p = 2 goes through the eigenvalue fast path.
inline MaclaurinReport check_vector_maclaurin(const VectorFamily& family,
                                              PowerExponent p, int k_max,
                                              double tol = kDefaultMarginTol,
                                              std::uint64_t cap = kDefaultSubsetCap) {
  if (k_max < 1 || k_max > family.dim() || family.dim() > family.count()) {
    throw BadShape("check_vector_maclaurin: need 1 <= k_max <= d <= m");
  }
  MaclaurinReport r;
  r.p = p.display_value();
  r.tolerance = tol;
  if (p.is_finite() && p.p() == 2.0) {
    const EigenSpectrum spec = eigen_spectrum(gram(family));
    for (int k = 1; k <= k_max; ++k) {
      const double raw = elementary_symmetric(spec.values, k);
      const double nsub = static_cast<double>(binomial(family.count(), k));
      r.means.push_back(raw <= 0.0 ? 0.0 : std::pow(raw / nsub, 1.0 / (2.0 * k)));
    }
  } else {
    for (int k = 1; k <= k_max; ++k) {
      r.means.push_back(s_k_p(family, k, p, cap).mean);
    }
  }
  detail::finish_report(r);
  return r;
}

/// Explicit negative-exponent probe of the chain. Requires every wedge
/// volume involved to be positive; a vanishing one makes the negative power
/// diverge and the probe infeasible.
inline MaclaurinReport probe_vector_maclaurin(const VectorFamily& family, double p,
                                              int k_max,
                                              double tol = kDefaultMarginTol,
                                              std::uint64_t cap = kDefaultSubsetCap) {
  if (!(p < 0.0) || !std::isfinite(p)) {
    throw BadShape("probe_vector_maclaurin: probe exponent must be negative");
  }
  if (k_max < 1 || k_max > family.dim() || family.dim() > family.count()) {
    throw BadShape("probe_vector_maclaurin: need 1 <= k_max <= d <= m");
  }
  const GramMatrix g = gram(family);
  MaclaurinReport r;
  r.p = p;
  r.tolerance = tol;
  for (int k = 1; k <= k_max; ++k) {
    CompensatedSum sum;
    bool degenerate = false;
    for_each_subset(
        family.count(), k,
        [&](const std::vector<int>& idx) {
          const double w = detail::wedge_from_gram(g.entries(), idx);
          if (w == 0.0) {
            degenerate = true;
          } else {
            sum.add(std::pow(w, p));
          }
        },
        cap);
    if (degenerate) {
      throw InfeasibleTarget("probe_vector_maclaurin: zero wedge volume at k=" +
                             std::to_string(k));
    }
    const double nsub = static_cast<double>(binomial(family.count(), k));
    r.means.push_back(std::pow(sum.value() / nsub, 1.0 / (k * p)));
  }
  detail::finish_report(r);
  return r;
}

}  // namespace wedgemeans
