#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/numeric.hpp"

namespace wedgemeans {

/// Sampling law for random families.
struct Distribution {
  enum class Kind { gaussian, uniform_cube, near_orthonormal };

  static Distribution gaussian() { return {Kind::gaussian, 0.0}; }
  static Distribution uniform_cube() { return {Kind::uniform_cube, 0.0}; }
  /// Standard basis (m = d required) plus eps-scaled gaussian noise.
  static Distribution near_orthonormal(double eps) {
    if (eps < 0.0) throw BadShape("near_orthonormal: eps must be >= 0");
    return {Kind::near_orthonormal, eps};
  }

  Kind kind;
  double eps;
};

namespace detail {

inline Eigen::MatrixXd sample_columns(int d, int m, const Distribution& dist,
                                      std::mt19937_64& rng) {
  Eigen::MatrixXd cols(d, m);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  switch (dist.kind) {
    case Distribution::Kind::gaussian:
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < d; ++i) cols(i, j) = normal(rng);
      break;
    case Distribution::Kind::uniform_cube:
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < d; ++i) cols(i, j) = uniform(rng);
      break;
    case Distribution::Kind::near_orthonormal:
      if (m != d) throw BadShape("near_orthonormal sampling requires m = d");
      cols.setIdentity();
      if (dist.eps > 0.0) {
        for (int j = 0; j < m; ++j)
          for (int i = 0; i < d; ++i) cols(i, j) += dist.eps * normal(rng);
      }
      break;
  }
  return cols;
}

}  // namespace detail

/// Deterministic sampled family: same (m, d, distribution, seed) always
/// yields the same vectors.
inline VectorFamily random_family(int m, int d, const Distribution& dist,
                                  std::uint64_t seed) {
  if (d < 1 || m < d) throw BadShape("random_family: need m >= d >= 1");
  std::mt19937_64 rng(substream_seed(seed, 0));
  return VectorFamily(d, detail::sample_columns(d, m, dist, rng));
}

}  // namespace wedgemeans
