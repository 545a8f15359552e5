#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "copcone/factor.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

namespace {

// Nearest orthogonal matrix to B^T P (orthogonal Procrustes).
Matrix procrustes(const Matrix& b, const Matrix& p) {
  const Svd s = svd(b.transpose() * p);
  return s.u * s.w.transpose();
}

Matrix random_orthogonal(std::size_t p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<Vec> cols;
  while (cols.size() < p) {
    Vec c(p);
    for (double& x : c) x = gauss(rng);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : cols) {
        const double d = dot(c, q);
        for (std::size_t r = 0; r < p; ++r) c[r] -= d * q[r];
      }
    const double nrm = std::sqrt(dot(c, c));
    if (nrm < 1e-8) continue;
    for (double& x : c) x /= nrm;
    cols.push_back(std::move(c));
  }
  return Matrix::from_columns(p, cols);
}

Matrix clamp_nonneg(Matrix v) {
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) v(i, j) = std::max(v(i, j), 0.0);
  return v;
}

}  // namespace

std::optional<NonnegFactor> heuristic_min_factor(const SymMat& m, std::size_t p_target,
                                                 const HeuristicOptions& options, const Tolerance& tol) {
  const std::size_t n = m.order();
  if (p_target == 0 || is_dnn(m, tol).answer != Answer::In) return std::nullopt;
  if (p_target < num_rank(m, tol)) return std::nullopt;

  const double scale = std::max(m.max_abs(), 1e-300);
  const double accept = 1e-7 * scale;

  // Fixed root B (n x p): pivoted Cholesky padded with zero columns.
  const PivotedCholesky chol = pivoted_cholesky(m, tol);
  if (chol.l.cols() > p_target) return std::nullopt;
  Matrix b(n, p_target);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < chol.l.cols(); ++j) b(i, j) = chol.l(i, j);

  auto attempt = [&](Matrix q) -> std::optional<NonnegFactor> {
    double last = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int it = 0; it < options.iterations; ++it) {
      const Matrix v = b * q;
      const Matrix pv = clamp_nonneg(v);
      if (max_abs_diff(SymMat::gram(pv), m) <= accept) return NonnegFactor(pv);
      const double gap = (v - pv).max_abs();
      stalled = gap > last * (1.0 - 1e-6) ? stalled + 1 : 0;
      if (stalled > 50) break;
      last = std::min(last, gap);
      q = procrustes(b, pv);
    }
    return std::nullopt;
  };

  if (options.seed_factor && options.seed_factor->order() == n && options.seed_factor->cols() <= p_target) {
    Matrix s(n, p_target);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < options.seed_factor->cols(); ++j) s(i, j) = (*options.seed_factor)(i, j);
    if (auto f = attempt(procrustes(b, s))) return f;
  }

  std::mt19937_64 rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    Matrix q = r == 0 ? Matrix::identity(p_target) : random_orthogonal(p_target, rng);
    if (auto f = attempt(std::move(q))) return f;
  }
  return std::nullopt;
}

}  // namespace copcone
