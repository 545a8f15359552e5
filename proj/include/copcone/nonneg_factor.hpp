#pragma once

#include <cstddef>
#include <vector>

#include "copcone/matrix.hpp"

namespace copcone {

/// Entrywise-nonnegative n x p factor V; M = V V^T is the cp matrix it
/// certifies and each column is one rank-one term of the decomposition.
/// Entries in [-clamp, 0) are clamped to zero on construction, anything more
/// negative is rejected with NotNonneg, and all-zero columns are dropped.
class NonnegFactor {
 public:
  explicit NonnegFactor(const Matrix& v, double clamp = 0.0);
  static NonnegFactor from_columns(std::size_t n, const std::vector<Vec>& cols, double clamp = 0.0);
  /// Order-n factor with no columns (the factor of the zero matrix).
  static NonnegFactor empty(std::size_t n) { return NonnegFactor(Matrix(n, 0)); }

  std::size_t order() const { return v_.rows(); }
  std::size_t cols() const { return v_.cols(); }
  const Matrix& matrix() const { return v_; }
  Vec column(std::size_t j) const { return v_.column(j); }
  double operator()(std::size_t i, std::size_t j) const { return v_(i, j); }

  SymMat product() const { return SymMat::gram(v_); }
  /// max_ij |(V V^T - M)_ij|.
  double residual(const SymMat& m) const { return max_abs_diff(product(), m); }

 private:
  Matrix v_;
};

}  // namespace copcone
