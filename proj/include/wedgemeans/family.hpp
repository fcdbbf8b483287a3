#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"

namespace wedgemeans {

/// An ordered list of `count` vectors in R^dim, stored as the columns of a
/// dim x count matrix. All coordinates must be finite. d <= m is not
/// required here; operations that need it check it themselves.
class VectorFamily {
 public:
  VectorFamily(int dim, Eigen::MatrixXd columns) : dim_(dim), cols_(std::move(columns)) {
    if (dim_ < 1) throw BadShape("VectorFamily: dim must be >= 1");
    if (cols_.rows() != dim_) throw BadShape("VectorFamily: matrix rows != dim");
    if (cols_.cols() < 1) throw BadShape("VectorFamily: need at least one vector");
    if (!cols_.allFinite()) throw BadShape("VectorFamily: non-finite coordinate");
  }

  static VectorFamily from_columns(Eigen::MatrixXd columns) {
    const int d = static_cast<int>(columns.rows());
    return VectorFamily(d, std::move(columns));
  }

  /// Builds a family from row-per-vector data, e.g. {{1,0},{1,1}}.
  static VectorFamily from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw BadShape("VectorFamily: empty vector list");
    const int d = static_cast<int>(rows.front().size());
    Eigen::MatrixXd cols(d, static_cast<int>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (static_cast<int>(rows[j].size()) != d) {
        throw BadShape("VectorFamily: vector " + std::to_string(j + 1) +
                       " has wrong length");
      }
      for (int i = 0; i < d; ++i) cols(i, static_cast<int>(j)) = rows[j][i];
    }
    return VectorFamily(d, std::move(cols));
  }

  static VectorFamily standard_basis(int d) {
    return VectorFamily(d, Eigen::MatrixXd::Identity(d, d));
  }

  int dim() const { return dim_; }
  int count() const { return static_cast<int>(cols_.cols()); }

  /// Column view of vector `i` (0-based).
  Eigen::MatrixXd::ConstColXpr vector(int i) const { return cols_.col(i); }
  const Eigen::MatrixXd& columns() const { return cols_; }

  double norm_of(int i) const { return cols_.col(i).norm(); }

  VectorFamily with_vector_replaced(int i, const Eigen::VectorXd& v) const {
    Eigen::MatrixXd c = cols_;
    c.col(i) = v;
    return VectorFamily(dim_, std::move(c));
  }

  VectorFamily scaled(double c) const { return VectorFamily(dim_, cols_ * c); }

 private:
  int dim_;
  Eigen::MatrixXd cols_;
};

}  // namespace wedgemeans
