#include "copcone/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copcone/cones.hpp"
#include "copcone/error.hpp"
#include "copcone/extremal.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

int djl_lower(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  return n <= 4 ? n : n * n / 4;
}

int babe(int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be >= 1");
  return r <= 2 ? r : r * (r + 1) / 2 - 1;
}

PnInterval known_pn_interval(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (n <= 4) return {n, n};
  if (n == 5) return {6, 6};
  if (n == 6) return {9, 15};
  return {djl_lower(n), babe(n) - 3};
}

int known_pn_star_upper(int n) {
  if (n < 5) throw Error(ErrorCode::InvalidArgument, "defined for n >= 5");
  return babe(n) - 4;
}

std::string_view to_string(BoundRule rule) {
  switch (rule) {
    case BoundRule::RankLb: return "RANK_LB";
    case BoundRule::FactorColumns: return "FACTOR_COLUMNS";
    case BoundRule::Babe: return "BABE";
    case BoundRule::BnK1: return "BN_K1";
    case BoundRule::Bn4: return "BN_4";
    case BoundRule::ZeroEntry: return "ZERO_ENTRY";
    case BoundRule::Horn15: return "HORN15";
    case BoundRule::KnownPn: return "KNOWN_PN";
  }
  return "UNKNOWN";
}

std::vector<BoundEntry> witness_bound(const SymMat& m, const SymMat& a, const Tolerance& tol) {
  if (m.order() != a.order()) throw Error(ErrorCode::InvalidArgument, "order mismatch");
  if (!orthogonal(m, a, tol))
    throw Error(ErrorCode::NotOrthogonal, "<A, M> = " + std::to_string(inner(m, a)));
  if (is_copositive(a, tol).answer != Answer::In)
    throw Error(ErrorCode::NotCopositiveWitness, "witness is not certified copositive");

  const int n = static_cast<int>(m.order());
  const double eps = tol.threshold(a.max_abs());
  std::vector<BoundEntry> out;

  int k = 0;
  for (std::size_t i = 0; i < a.order(); ++i)
    if (a(i, i) > eps) ++k;
  if (k >= 2)
    out.push_back({babe(n) - k + 1, BoundRule::BnK1, std::to_string(k) + " positive diagonal entries in A"});
  if (n >= 5 && is_nonneg(a, tol).answer == Answer::NotIn)
    out.push_back({babe(n) - 4, BoundRule::Bn4, "A has a negative entry"});
  if (n == 6) {
    const ZeroDiagResult z = zero_diag_reduce(a, tol);
    if (z.structure_ok && z.kept.size() == 5 && horn_orbit_recognize(*z.s, tol))
      out.push_back({15, BoundRule::Horn15, "A is in the Horn orbit padded by a zero row"});
  }
  return out;
}

std::optional<BoundEntry> zero_entry_bound(const SymMat& m, const Tolerance& tol) {
  const std::size_t n = m.order();
  if (n < 2) return std::nullopt;
  const double eps = tol.threshold(m.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(m(i, j)) <= eps)
        return BoundEntry{2 * known_pn_interval(static_cast<int>(n) - 1).upper, BoundRule::ZeroEntry,
                          "M(" + std::to_string(i) + "," + std::to_string(j) + ") = 0"};
  return std::nullopt;
}

BoundReport cp_rank_interval(const SymMat& m, const std::optional<NonnegFactor>& v,
                             const std::vector<SymMat>& witnesses, const Tolerance& tol) {
  if (is_dnn(m, tol).answer != Answer::In) throw Error(ErrorCode::NotDnn, "M is not doubly nonnegative");
  const int n = static_cast<int>(m.order());
  BoundReport r;
  r.n = m.order();
  const int rank = static_cast<int>(num_rank(m, tol));
  r.lower = {rank, BoundRule::RankLb, "numerical rank of M"};

  if (rank >= 3) r.uppers.push_back({babe(rank), BoundRule::Babe, "rank " + std::to_string(rank)});
  if (v) {
    if (v->order() != m.order() || v->residual(m) > tol.threshold(m.max_abs()))
      throw Error(ErrorCode::FactorMismatch, "V V^T does not reproduce M");
    r.uppers.push_back({static_cast<int>(v->cols()), BoundRule::FactorColumns, "supplied factor"});
  }
  for (const SymMat& a : witnesses) {
    const auto w = witness_bound(m, a, tol);
    r.uppers.insert(r.uppers.end(), w.begin(), w.end());
  }
  if (auto z = zero_entry_bound(m, tol)) r.uppers.push_back(*z);
  r.uppers.push_back({known_pn_interval(n).upper, BoundRule::KnownPn, "order " + std::to_string(n)});

  r.best_lower = rank;
  r.best_upper = r.uppers.front().value;
  for (const auto& e : r.uppers) r.best_upper = std::min(r.best_upper, e.value);
  if (r.best_upper < r.best_lower)
    throw Error(ErrorCode::InconsistentBounds, "upper " + std::to_string(r.best_upper) + " below lower " +
                                                   std::to_string(r.best_lower));
  return r;
}

BoundaryShift psd_boundary_shift(const SymMat& mbar, const Tolerance& tol) {
  const std::size_t n = mbar.order();
  const auto eig = eig_sym(mbar);
  if (eig.values.back() <= tol.threshold(mbar.max_abs()))
    throw Error(ErrorCode::NotPositive, "Mbar is not positive definite");
  double inv_nn = 0.0;
  for (std::size_t k = 0; k < n; ++k) inv_nn += eig.vectors(n - 1, k) * eig.vectors(n - 1, k) / eig.values[k];
  BoundaryShift s;
  s.delta = 1.0 / inv_nn;
  s.m = mbar;
  s.m.set(n - 1, n - 1, mbar(n - 1, n - 1) - s.delta);
  return s;
}

}  // namespace copcone
