#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "copcone/error.hpp"
#include "copcone/factor.hpp"

namespace copcone {

NonnegFactor dd_factorize(const SymMat& m, const Tolerance& tol) {
  const std::size_t n = m.order();
  const double eps = tol.threshold(m.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) < -eps)
        throw Error(ErrorCode::NotNonneg,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is negative");

  std::vector<Vec> cols;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = m(i, j);
      if (w <= 0.0) continue;
      Vec c(n, 0.0);
      c[i] = c[j] = std::sqrt(w);
      cols.push_back(std::move(c));
    }
  for (std::size_t i = 0; i < n; ++i) {
    double slack = m(i, i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) slack -= std::max(m(i, j), 0.0);
    if (slack < -eps)
      throw Error(ErrorCode::NotDd, "row " + std::to_string(i) + " is not diagonally dominant");
    if (slack <= 0.0) continue;
    Vec c(n, 0.0);
    c[i] = std::sqrt(slack);
    cols.push_back(std::move(c));
  }
  return NonnegFactor::from_columns(n, cols);
}

PositiveDdResult positive_dd_factorize(const SymMat& m, const Tolerance& tol) {
  const std::size_t n = m.order();
  if (n <= 2)
    throw Error(ErrorCode::OrderTooSmall,
                "positive diagonally dominant matrices of order <= 2 need not be interior");
  const double mu = m.min_entry();
  if (mu <= tol.abs) throw Error(ErrorCode::NotPositive, "minimum entry is not positive");

  SymMat shifted = m - mu * SymMat::ones(n);
  const NonnegFactor rest = dd_factorize(shifted, tol);

  std::vector<Vec> cols;
  cols.push_back(Vec(n, std::sqrt(mu)));
  for (std::size_t j = 0; j < rest.cols(); ++j) cols.push_back(rest.column(j));
  NonnegFactor v = NonnegFactor::from_columns(n, cols);

  auto cert = cp_interior_certificate(v, tol);
  if (!cert) throw Error(ErrorCode::Internal, "interior certificate failed for a positive dd matrix");
  return {std::move(v), std::move(*cert)};
}

NonnegFactor cp3_factorize(const SymMat& y, const Tolerance& tol) {
  const std::size_t n = y.order();
  if (n > 3) throw Error(ErrorCode::InvalidArgument, "cp3_factorize expects order <= 3");
  const ConeVerdict dnn = is_dnn(y, tol);
  if (dnn.answer != Answer::In) throw Error(ErrorCode::NotDnn, "input is not doubly nonnegative");

  const double scale = y.max_abs();
  const double eps = tol.threshold(scale);
  // Pivots at roundoff level are treated as exact zeros.
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i)
    if (y(i, i) > tiny) active.push_back(i);

  std::vector<Vec> cols;
  auto factor2 = [&](std::size_t a, std::size_t b, double saa, double sab, double sbb) {
    sab = std::max(sab, 0.0);
    if (saa <= tiny && sbb <= tiny) return;
    if (saa <= tiny) {
      Vec c(n, 0.0);
      c[b] = std::sqrt(sbb);
      cols.push_back(std::move(c));
      return;
    }
    Vec c1(n, 0.0);
    c1[a] = std::sqrt(saa);
    c1[b] = sab / c1[a];
    cols.push_back(std::move(c1));
    const double rem = sbb - sab * sab / saa;
    if (rem > tiny) {
      Vec c2(n, 0.0);
      c2[b] = std::sqrt(rem);
      cols.push_back(std::move(c2));
    }
  };

  if (active.size() == 1) {
    Vec c(n, 0.0);
    c[active[0]] = std::sqrt(y(active[0], active[0]));
    cols.push_back(std::move(c));
  } else if (active.size() == 2) {
    factor2(active[0], active[1], y(active[0], active[0]), y(active[0], active[1]),
            y(active[1], active[1]));
  } else if (active.size() == 3) {
    // Eliminate the pivot whose 2x2 Schur complement has the largest
    // normalized off-diagonal; one of the three is always >= 0 for DNN input.
    std::size_t pk = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t a = (k + 1) % 3, b = (k + 2) % 3;
      const double s = (y(a, b) - y(a, k) * y(b, k) / y(k, k)) / std::sqrt(y(a, a) * y(b, b));
      if (s > best + 1e-15) {
        best = s;
        pk = k;
      }
    }
    if (best * std::sqrt(y(0, 0) * y(1, 1) * y(2, 2) / y(pk, pk)) < -eps)
      throw Error(ErrorCode::Internal, "no pivot with nonnegative Schur complement");
    const std::size_t a = std::min((pk + 1) % 3, (pk + 2) % 3);
    const std::size_t b = std::max((pk + 1) % 3, (pk + 2) % 3);
    const double d = std::sqrt(y(pk, pk));
    Vec c(n, 0.0);
    for (std::size_t i = 0; i < 3; ++i) c[i] = std::max(y(i, pk), 0.0) / d;
    cols.push_back(c);
    factor2(a, b, y(a, a) - c[a] * c[a], y(a, b) - c[a] * c[b], y(b, b) - c[b] * c[b]);
  }
  return NonnegFactor::from_columns(n, cols);
}

NonnegFactor truncate_factor(const NonnegFactor& v, std::size_t k) {
  if (k < 1 || k > v.cols())
    throw Error(ErrorCode::KOutOfRange,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(v.cols()) + "]");
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < k; ++j) cols.push_back(v.column(j));
  return NonnegFactor::from_columns(v.order(), cols);
}

SupportSplit support_split(const NonnegFactor& v, std::size_t index) {
  if (index >= v.order()) throw Error(ErrorCode::InvalidArgument, "index out of range");
  std::vector<Vec> with, without;
  for (std::size_t j = 0; j < v.cols(); ++j)
    (v(index, j) > 0.0 ? with : without).push_back(v.column(j));
  return {NonnegFactor::from_columns(v.order(), with), NonnegFactor::from_columns(v.order(), without)};
}

}  // namespace copcone
