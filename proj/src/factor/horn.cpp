#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "copcone/error.hpp"
#include "copcone/factor.hpp"
#include "copcone/lp.hpp"

namespace copcone {

Matrix horn_generators() {
  Matrix w(6, 6);
  for (std::size_t i = 0; i < 5; ++i) {
    w(i, i) = 1.0;
    w((i + 1) % 5, i) = 1.0;
  }
  w(5, 5) = 1.0;
  return w;
}

NonnegFactor horn_orthogonal_factorize(const NonnegFactor& v, const Tolerance& tol) {
  if (v.order() != 6) throw Error(ErrorCode::InvalidArgument, "expected a factor of order 6");
  const SymMat m = v.product();
  const SymMat a = pad_zero(horn(), 6);

  double weight = 0.0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) weight += std::abs(m(i, j) * a(i, j));
  const double ip = inner(m, a);
  if (std::abs(ip) > tol.abs + tol.rel * weight)
    throw Error(ErrorCode::NotOrthogonalToHorn, "<M, H+0> = " + std::to_string(ip));

  const Matrix w = horn_generators();
  // Coordinates (i, i+1, 6) of each column in cone i, collected per cone.
  std::array<std::vector<Vec>, 5> groups;
  for (std::size_t j = 0; j < v.cols(); ++j) {
    const Vec col = v.column(j);
    bool placed = false;
    for (std::size_t i = 0; i < 5 && !placed; ++i) {
      const std::vector<Vec> gens{w.column(i), w.column((i + 1) % 5), w.column(5)};
      auto coef = conic_combination(gens, col);
      if (!coef) continue;
      for (double& c : *coef) c = std::max(c, 0.0);
      groups[i].push_back(*coef);
      placed = true;
    }
    if (!placed)
      throw Error(ErrorCode::ColumnOutsideCones,
                  "column " + std::to_string(j) + " lies in none of the generator cones");
  }

  std::vector<Vec> out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (groups[i].empty()) continue;
    const Matrix x = Matrix::from_columns(3, groups[i]);
    const NonnegFactor f = cp3_factorize(SymMat::gram(x), tol);
    const std::array<std::size_t, 3> active{i, (i + 1) % 5, 5};
    for (std::size_t c = 0; c < f.cols(); ++c) {
      Vec u(6, 0.0);
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t r = 0; r < 6; ++r) u[r] += w(r, active[k]) * f(k, c);
      out.push_back(std::move(u));
    }
  }
  return NonnegFactor::from_columns(6, out);
}

}  // namespace copcone
