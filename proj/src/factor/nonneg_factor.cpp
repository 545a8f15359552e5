#include "copcone/nonneg_factor.hpp"

#include <string>

#include "copcone/error.hpp"

namespace copcone {

NonnegFactor::NonnegFactor(const Matrix& v, double clamp) {
  std::vector<Vec> keep;
  for (std::size_t j = 0; j < v.cols(); ++j) {
    Vec c = v.column(j);
    bool nonzero = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < -clamp)
        throw Error(ErrorCode::NotNonneg, "factor entry (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") = " + std::to_string(c[i]));
      if (c[i] < 0.0) c[i] = 0.0;
      nonzero = nonzero || c[i] != 0.0;
    }
    if (nonzero) keep.push_back(std::move(c));
  }
  v_ = Matrix::from_columns(v.rows(), keep);
}

NonnegFactor NonnegFactor::from_columns(std::size_t n, const std::vector<Vec>& cols, double clamp) {
  return NonnegFactor(Matrix::from_columns(n, cols), clamp);
}

}  // namespace copcone
