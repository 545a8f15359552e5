#pragma once

#include <random>
#include <vector>

#include "copcone/factor.hpp"
#include "copcone/matrix.hpp"
#include "oracles.hpp"

namespace testsupport {

using copcone::Matrix;
using copcone::SymMat;
using copcone::Vec;

inline oracle::Dense dense(const SymMat& a) {
  oracle::Dense d = oracle::zeros(a.order(), a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) d[i][j] = a(i, j);
  return d;
}

inline oracle::Dense dense(const Matrix& a) {
  oracle::Dense d = oracle::zeros(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d[i][j] = a(i, j);
  return d;
}

inline SymMat sym(const oracle::Dense& d) {
  std::vector<double> flat;
  for (const auto& r : d) flat.insert(flat.end(), r.begin(), r.end());
  return SymMat::from_dense(d.size(), flat);
}

inline SymMat sym(std::size_t n, std::initializer_list<double> v) {
  return SymMat::from_dense(n, std::vector<double>(v));
}

/// Independent residual max |V V^T - M|.
inline double residual(const copcone::NonnegFactor& v, const SymMat& m) {
  return oracle::max_abs_diff(oracle::gram(dense(v.matrix())), dense(m));
}

/// Random nonnegative diagonally dominant matrix with some zero off-diagonals.
inline SymMat random_dd(std::mt19937_64& rng, std::size_t n, bool positive = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  oracle::Dense a = oracle::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = u(rng);
      if (!positive && u(rng) < 0.3) v = 0.0;
      if (positive) v += 0.05;
      a[i][j] = a[j][i] = v;
    }
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s += a[i][j];
    a[i][i] = s + (u(rng) < 0.2 ? 0.0 : u(rng));
  }
  return sym(a);
}

/// V = W X with X columns supported on {i, i+1, 6} (cyclic in the first five).
inline copcone::NonnegFactor random_horn_factor(std::mt19937_64& rng, std::size_t cols) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Matrix w = copcone::horn_generators();
  Matrix v(6, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    const std::size_t i = rng() % 5;
    const double coef[3] = {u(rng) < 0.15 ? 0.0 : u(rng), u(rng) < 0.15 ? 0.0 : u(rng), u(rng) < 0.5 ? 0.0 : u(rng)};
    const std::size_t gen[3] = {i, (i + 1) % 5, 5};
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t r = 0; r < 6; ++r) v(r, c) += coef[k] * w(r, gen[k]);
  }
  return copcone::NonnegFactor(v);
}

inline std::vector<std::size_t> random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testsupport
