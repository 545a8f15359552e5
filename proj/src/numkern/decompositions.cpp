#include <algorithm>
#include <cmath>
#include <numeric>

#include "copcone/error.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

Matrix orthonormal_complement(const Matrix& q) {
  const std::size_t n = q.rows();
  std::vector<Vec> basis;
  for (std::size_t j = 0; j < q.cols(); ++j) basis.push_back(q.column(j));
  std::vector<Vec> added;
  // Gram-Schmidt (twice) over the standard basis; keep candidates with a
  // substantial component outside the current span.
  for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
    Vec e = unit(n, i);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) {
        const double c = dot(e, b);
        for (std::size_t r = 0; r < n; ++r) e[r] -= c * b[r];
      }
    const double nrm = std::sqrt(dot(e, e));
    if (nrm < 1e-8) continue;
    for (double& x : e) x /= nrm;
    basis.push_back(e);
    added.push_back(e);
  }
  return Matrix::from_columns(n, added);
}

Svd svd(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m < n) throw Error(ErrorCode::InvalidArgument, "svd expects rows >= cols");
  Matrix g = a;
  Matrix w = Matrix::identity(n);

  constexpr int kMaxSweeps = 80;
  constexpr double kEps = 1e-14;
  double frob2 = 0.0;
  for (double v : a.data()) frob2 += v * v;
  // Columns this small stand for zero singular values; rotating them only churns roundoff.
  const double negligible = 1e-30 * frob2;
  bool rotated = true;
  for (int sweep = 0; sweep < kMaxSweeps && rotated; ++sweep) {
    rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          alpha += g(r, i) * g(r, i);
          beta += g(r, j) * g(r, j);
          gamma += g(r, i) * g(r, j);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        if (std::min(alpha, beta) <= negligible) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const double gi = g(r, i), gj = g(r, j);
          g(r, i) = c * gi - s * gj;
          g(r, j) = s * gi + c * gj;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double wi = w(r, i), wj = w(r, j);
          w(r, i) = c * wi - s * wj;
          w(r, j) = s * wi + c * wj;
        }
      }
  }
  if (rotated) throw Error(ErrorCode::Internal, "one-sided Jacobi SVD did not converge");

  Vec sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (std::size_t r = 0; r < m; ++r) s2 += g(r, j) * g(r, j);
    sigma[j] = std::sqrt(s2);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  Svd out{Matrix(m, n), Vec(n), Matrix(n, n)};
  const double cutoff = (sigma.empty() ? 0.0 : sigma[order[0]]) * 1e-13;
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.s[k] = sigma[j];
    for (std::size_t r = 0; r < n; ++r) out.w(r, k) = w(r, j);
    if (sigma[j] > cutoff && sigma[j] > 0.0) {
      for (std::size_t r = 0; r < m; ++r) out.u(r, k) = g(r, j) / sigma[j];
      ++nonzero;
    }
  }
  if (nonzero < n) {
    Matrix head(m, nonzero);
    for (std::size_t k = 0; k < nonzero; ++k)
      for (std::size_t r = 0; r < m; ++r) head(r, k) = out.u(r, k);
    const Matrix extra = orthonormal_complement(head);
    for (std::size_t k = nonzero; k < n; ++k)
      for (std::size_t r = 0; r < m; ++r) out.u(r, k) = extra(r, k - nonzero);
  }
  return out;
}

PivotedCholesky pivoted_cholesky(const SymMat& a, const Tolerance& tol) {
  const std::size_t n = a.order();
  const double thr = tol.threshold(a.max_abs());
  Matrix s = a.dense();  // running Schur complement
  std::vector<bool> used(n, false);
  std::vector<Vec> cols;
  PivotedCholesky out;

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && s(i, i) > best) {
        best = s(i, i);
        piv = i;
      }
    if (piv == n || best <= thr) break;
    used[piv] = true;
    out.pivots.push_back(piv);
    const double d = std::sqrt(best);
    Vec col(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] || i == piv) col[i] = s(i, piv) / d;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) -= col[i] * col[j];
    cols.push_back(std::move(col));
  }

  out.residual_min_diagonal = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) {
      out.residual_min_diagonal = any ? std::min(out.residual_min_diagonal, s(i, i)) : s(i, i);
      any = true;
    }
  out.l = Matrix::from_columns(n, cols);
  return out;
}

}  // namespace copcone
