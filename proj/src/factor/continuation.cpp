#include <cmath>
#include <string>

#include "copcone/error.hpp"
#include "copcone/factor.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

namespace {

constexpr int kMaxNewtonSteps = 20;

double residual(const Matrix& v, const SymMat& target) {
  return max_abs_diff(SymMat::gram(v), target);
}

}  // namespace

ContinuationResult factor_continuation(const Matrix& vbar, const NonnegFactor& vtilde,
                                       const SymMat& mhat, const Tolerance& tol) {
  const std::size_t n = vbar.rows();
  if (vbar.cols() != n) throw Error(ErrorCode::InvalidArgument, "Vbar must be square");
  if (mhat.order() != n || vtilde.order() != n)
    throw Error(ErrorCode::InvalidArgument, "order mismatch");
  if (vbar.min_entry() <= tol.abs) throw Error(ErrorCode::NotPositive, "Vbar is not entrywise positive");
  {
    const Svd s0 = svd(vbar);
    if (s0.s.back() <= 1e-14 * s0.s.front()) throw Error(ErrorCode::NotPositive, "Vbar is singular");
  }

  const SymMat target = mhat - vtilde.product();
  const double scale = std::max(mhat.max_abs(), 1e-300);
  const double goal = 1e-10 * scale;
  const double floor = 1e-14 * scale;

  ContinuationResult out{NonnegFactor::empty(n), vbar, {}, 0};
  Matrix& v = out.square_block;
  double r = residual(v, target);
  out.residuals.push_back(r);
  while (r > floor) {
    if (out.iterations == kMaxNewtonSteps) {
      if (r <= goal) break;
      throw Error(ErrorCode::NewtonDiverged, "no convergence in " + std::to_string(kMaxNewtonSteps) + " steps");
    }
    const Svd s = svd(v);
    const SymMat rm = target - SymMat::gram(v);
    // Z = (U^T R U) ./ (s_i + s_j), dV = U Z W^T.
    const Matrix ut = s.u.transpose();
    Matrix z = ut * rm.dense() * s.u;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) z(i, j) /= s.s[i] + s.s[j];
    const Matrix dv = s.u * z * s.w.transpose();
    if (!std::isfinite(dv.max_abs()) || dv.max_abs() > vbar.max_abs())
      throw Error(ErrorCode::NewtonDiverged, "Newton step outside the convergence region");
    Matrix next = v + dv;
    const double rn = residual(next, target);
    ++out.iterations;
    if (!std::isfinite(rn)) throw Error(ErrorCode::NewtonDiverged, "non-finite residual");
    if (rn >= r) {
      if (r <= goal) {
        --out.iterations;
        break;
      }
      throw Error(ErrorCode::NewtonDiverged, "residual increased from " + std::to_string(r) +
                                                 " to " + std::to_string(rn));
    }
    v = std::move(next);
    r = rn;
    out.residuals.push_back(r);
  }

  if (v.min_entry() <= 0.0) throw Error(ErrorCode::PositivityLost, "continued block has a nonpositive entry");
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(v.column(j));
  for (std::size_t j = 0; j < vtilde.cols(); ++j) cols.push_back(vtilde.column(j));
  out.factor = NonnegFactor::from_columns(n, cols);
  return out;
}

}  // namespace copcone
