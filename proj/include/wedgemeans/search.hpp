#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/inequalities.hpp"
#include "wedgemeans/maclaurin.hpp"
#include "wedgemeans/power_means.hpp"
#include "wedgemeans/random.hpp"
#include "wedgemeans/reduction.hpp"
#include "wedgemeans/zonotope.hpp"

namespace wedgemeans {

/// What the search minimizes. A negative margin is a violation of the
/// corresponding inequality.
struct SearchTarget {
  enum class Kind { maclaurin, newton, reduction, projection_sharp };

  /// p may be 0, positive, +inf, or negative (the explicit probe mode).
  static SearchTarget maclaurin(double p, int k) { return {Kind::maclaurin, p, k}; }
  static SearchTarget newton(int k) { return {Kind::newton, 1.0, k}; }
  static SearchTarget reduction(int k) { return {Kind::reduction, 1.0, k}; }
  static SearchTarget projection_sharp(int k) {
    return {Kind::projection_sharp, 1.0, k};
  }

  Kind kind;
  double p;
  int k;
};

struct SearchConfig {
  std::vector<std::pair<int, int>> dims = {{3, 3}};  // (m, d) pairs
  std::vector<int> ks = {2};        // consumed by CLI sweeps
  std::vector<double> ps = {-1.0};  // consumed by CLI sweeps
  int restarts = 100;
  int steps = 400;
  double scale = 0.5;  // initial perturbation scale
  std::uint64_t seed = 1;
  Distribution distribution = Distribution::gaussian();
  std::uint64_t cap = kDefaultSubsetCap;

  void validate() const {
    if (dims.empty()) throw BadShape("SearchConfig: dims must be non-empty");
    for (auto [m, d] : dims) {
      if (d < 1 || m < d) throw BadShape("SearchConfig: each dims entry needs m >= d >= 1");
    }
    if (restarts < 1) throw BadShape("SearchConfig: restarts must be >= 1");
    if (steps < 0) throw BadShape("SearchConfig: steps must be >= 0");
    if (!(scale > 0.0)) throw BadShape("SearchConfig: perturbation scale must be > 0");
  }
};

struct SearchResult {
  double best_margin = std::numeric_limits<double>::infinity();
  VectorFamily witness;
  std::vector<double> trace;  // best margin per restart, +inf when infeasible
  std::uint64_t evaluations = 0;
};

namespace detail {

inline std::optional<double> maclaurin_pair_margin(const VectorFamily& f, double p,
                                                   int k, std::uint64_t cap) {
  if (p < 0.0) {
    const GramMatrix g = gram(f);
    double means[2];
    for (int t = 0; t < 2; ++t) {
      const int j = k - 1 + t;
      CompensatedSum sum;
      bool zero = false;
      for_each_subset(
          f.count(), j,
          [&](const std::vector<int>& idx) {
            const double w = wedge_from_gram(g.entries(), idx);
            if (w == 0.0) {
              zero = true;
            } else {
              sum.add(std::pow(w, p));
            }
          },
          cap);
      if (zero) return std::nullopt;  // negative power diverges
      const double nsub = static_cast<double>(binomial(f.count(), j));
      means[t] = std::pow(sum.value() / nsub, 1.0 / (j * p));
    }
    return means[0] - means[1];
  }
  PowerExponent pe = p == 0.0 ? PowerExponent::zero()
                   : std::isinf(p) ? PowerExponent::infinity()
                                   : PowerExponent::finite(p);
  return s_k_p(f, k - 1, pe, cap).mean - s_k_p(f, k, pe, cap).mean;
}

inline std::optional<double> target_margin(const VectorFamily& f,
                                           const SearchTarget& t, std::uint64_t cap) {
  try {
    switch (t.kind) {
      case SearchTarget::Kind::maclaurin:
        return maclaurin_pair_margin(f, t.p, t.k, cap);
      case SearchTarget::Kind::newton:
        return check_vector_newton(f, t.k, cap);
      case SearchTarget::Kind::reduction: {
        const RatioPair rp = check_reduction(f, t.k, 1e-10, cap);
        return rp.r_lo - rp.r_hi;
      }
      case SearchTarget::Kind::projection_sharp: {
        Eigen::VectorXd u = f.vector(0);
        const double n = u.norm();
        if (n == 0.0) return std::nullopt;
        u /= n;
        Zonotope z(VectorFamily(f.dim(), f.columns().rightCols(f.count() - 1)));
        return check_projection_inequality(z, u, t.k, /*sharp=*/true, cap).margin;
      }
    }
  } catch (const ZeroDenominator&) {
    return std::nullopt;
  } catch (const DegenerateGram&) {
    return std::nullopt;
  } catch (const DegenerateSpan&) {
    return std::nullopt;
  }
  return std::nullopt;
}

inline void validate_target(const SearchConfig& config, const SearchTarget& t) {
  for (auto [m, d] : config.dims) {
    if (config.distribution.kind == Distribution::Kind::near_orthonormal && m != d) {
      throw InfeasibleTarget("near-orthonormal sampling requires m = d");
    }
    switch (t.kind) {
      case SearchTarget::Kind::maclaurin:
        if (t.k < 2 || t.k > d) {
          throw InfeasibleTarget("maclaurin target needs 2 <= k <= d");
        }
        break;
      case SearchTarget::Kind::newton:
        if (t.k < 2 || t.k > d - 1 || m < d) {
          throw InfeasibleTarget("newton target needs 2 <= k <= d-1 and m >= d");
        }
        break;
      case SearchTarget::Kind::reduction:
        if (m != d || t.k < 2 || t.k > d) {
          throw InfeasibleTarget("reduction target needs m = d and 2 <= k <= d");
        }
        break;
      case SearchTarget::Kind::projection_sharp:
        // first vector is the projection direction, the rest generate Z;
        // V_{k-1}(Z) needs at least k-1 generators
        if (m < 2 || t.k < 2 || t.k > d || m - 1 < t.k - 1) {
          throw InfeasibleTarget("projection target needs 2 <= k <= d and m > k - 1");
        }
        break;
    }
  }
}

struct RestartOutcome {
  double margin = std::numeric_limits<double>::infinity();
  std::optional<VectorFamily> family;
  std::uint64_t evaluations = 0;
};

inline RestartOutcome run_restart(const SearchConfig& config, const SearchTarget& target,
                                  int restart_index) {
  std::mt19937_64 rng(substream_seed(config.seed, static_cast<std::uint64_t>(restart_index)));
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto [m, d] = config.dims[restart_index % config.dims.size()];

  RestartOutcome out;
  Eigen::MatrixXd cols;
  std::optional<double> margin;
  // redraw a bounded number of times if the initial sample is infeasible
  for (int attempt = 0; attempt < 16; ++attempt) {
    cols = sample_columns(d, m, config.distribution, rng);
    VectorFamily f(d, cols);
    margin = target_margin(f, target, config.cap);
    ++out.evaluations;
    if (margin) break;
  }
  if (!margin) return out;

  VectorFamily current(d, cols);
  double current_margin = *margin;
  double step = config.scale;
  int consecutive_rejects = 0;
  for (int s = 0; s < config.steps; ++s) {
    if (step < 1e-8 * config.scale) break;
    Eigen::MatrixXd proposal = current.columns();
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < d; ++i) proposal(i, j) += step * normal(rng);
    VectorFamily candidate(d, std::move(proposal));
    const std::optional<double> cand = target_margin(candidate, target, config.cap);
    ++out.evaluations;
    if (cand && *cand < current_margin) {
      current = std::move(candidate);
      current_margin = *cand;
      consecutive_rejects = 0;
    } else if (++consecutive_rejects >= 20) {
      step /= 2.0;
      consecutive_rejects = 0;
    }
  }
  out.margin = current_margin;
  out.family = std::move(current);
  return out;
}

}  // namespace detail

/// Seeded multi-restart descent on the target margin. Restarts own
/// independent RNG substreams derived from (seed, restart index) and are
/// merged by index, so the result is identical for any thread count.
inline SearchResult violation_search(const SearchConfig& config, const SearchTarget& target,
                                     int threads = 1) {
  config.validate();
  detail::validate_target(config, target);

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  if (threads <= 1 || config.restarts == 1) {
    for (int r = 0; r < config.restarts; ++r) {
      outcomes[r] = detail::run_restart(config, target, r);
    }
  } else {
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= config.restarts || failed.load()) return;
        try {
          outcomes[r] = detail::run_restart(config, target, r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min(threads, config.restarts);
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(error);
  }

  SearchResult result{std::numeric_limits<double>::infinity(),
                      VectorFamily::standard_basis(1),
                      {},
                      0};
  bool found = false;
  for (int r = 0; r < config.restarts; ++r) {
    const auto& o = outcomes[r];
    result.trace.push_back(o.margin);
    result.evaluations += o.evaluations;
    if (o.family && o.margin < result.best_margin) {
      result.best_margin = o.margin;
      result.witness = *o.family;
      found = true;
    }
  }
  if (!found) {
    throw InfeasibleTarget("violation_search: no feasible sample in any restart");
  }
  return result;
}

/// Re-evaluates a witness with the exact code path the search used.
inline std::optional<double> evaluate_target_margin(const VectorFamily& family,
                                                    const SearchTarget& target,
                                                    std::uint64_t cap = kDefaultSubsetCap) {
  return detail::target_margin(family, target, cap);
}

}  // namespace wedgemeans
