#include <algorithm>
#include <cmath>
#include <numeric>

#include "copcone/error.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

namespace {

constexpr int kMaxSweeps = 100;

void normalize_sign(Matrix& v, std::size_t col) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    // Ties go to the lowest index so the choice is reproducible.
    if (std::abs(v(i, col)) > mag + 1e-12) {
      mag = std::abs(v(i, col));
      best = i;
    }
  }
  if (v(best, col) < 0.0)
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, col) = -v(i, col);
}

}  // namespace

EigenDecomposition eig_sym(const SymMat& sym) {
  const std::size_t n = sym.order();
  Matrix a = sym.dense();
  Matrix v = Matrix::identity(n);

  const double scale = sym.max_abs();
  bool converged = (n == 1 || scale == 0.0);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-16 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double app = a(p, p), aqq = a(q, q);
        if (std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        // Rutishauser's rotation: t = tan(theta) of the smaller root.
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) > 1e-14 * scale)
      throw Error(ErrorCode::Internal, "Jacobi eigensolver did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out{Vec(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    normalize_sign(out.vectors, k);
  }
  return out;
}

std::size_t num_rank(const SymMat& a, const Tolerance& tol) {
  const double thr = tol.threshold(a.max_abs());
  const auto eig = eig_sym(a);
  return static_cast<std::size_t>(std::count_if(eig.values.begin(), eig.values.end(),
                                                [&](double l) { return std::abs(l) > thr; }));
}

PsdResult psd_check(const SymMat& a, const Tolerance& tol) {
  const auto eig = eig_sym(a);
  const std::size_t n = a.order();
  PsdResult r;
  r.min_eigenvalue = eig.values[n - 1];
  r.psd = r.min_eigenvalue >= -tol.threshold(a.max_abs());
  if (!r.psd) {
    r.witness = eig.vectors.column(n - 1);
    const double m = max_abs(r.witness);
    for (double& w : r.witness) w /= m;
  }
  return r;
}

}  // namespace copcone
