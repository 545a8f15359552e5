#include <cmath>
#include <string>

#include "copcone/error.hpp"
#include "copcone/factor.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

namespace {

bool irreducible(const SymMat& m) {
  const std::size_t n = m.order();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && m(i, j) > 0.0) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
  }
  return reached == n;
}

// Unit Perron vector and eigenvalue; the Jacobi eigenvector is refined by
// power iteration.
std::pair<Vec, double> perron(const SymMat& m) {
  const auto eig = eig_sym(m);
  Vec x = eig.vectors.column(0);
  if (sum(x) < 0.0)
    for (double& c : x) c = -c;
  double lambda = eig.values[0];
  for (int it = 0; it < 1000; ++it) {
    Vec y = m.apply(x);
    const double nrm = std::sqrt(dot(y, y));
    if (nrm == 0.0) break;
    double change = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] /= nrm;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    lambda = nrm;
    if (change <= 1e-14) break;
  }
  return {x, lambda};
}

}  // namespace

PositifyResult perturb_positify(const NonnegFactor& v0, double eps, const Tolerance& tol) {
  if (!(eps >= 0.0) || !std::isfinite(eps))
    throw Error(ErrorCode::InvalidArgument, "eps must be a nonnegative number");
  if (v0.cols() == 0) throw Error(ErrorCode::PerronNotPositive, "empty factor");
  const SymMat m0 = v0.product();
  if (!irreducible(m0)) throw Error(ErrorCode::PerronNotPositive, "M0 is reducible");
  auto [p, lambda] = perron(m0);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] <= tol.abs)
      throw Error(ErrorCode::PerronNotPositive,
                  "Perron coordinate " + std::to_string(i) + " is not positive");

  const Matrix& a = v0.matrix();
  Vec x = a.transpose() * p;
  for (double& c : x) c /= lambda;
  const double xx = dot(x, x);
  const double delta = (std::sqrt(1.0 + eps * xx) - 1.0) / xx;
  // V0 (I + delta x x^T) = V0 + delta (V0 x) x^T, and V0 x = v.
  const Vec v0x = a * x;
  Matrix v = a;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) v(i, j) += delta * v0x[i] * x[j];

  return {m0 + eps * outer(p), NonnegFactor(v), p, delta};
}

}  // namespace copcone
