#include "copcone/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "copcone/cones.hpp"
#include "copcone/error.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

std::string_view to_string(ExtremeTag tag) {
  switch (tag) {
    case ExtremeTag::PsdRank1: return "PSD_RANK1";
    case ExtremeTag::E12Orbit: return "E12_ORBIT";
    case ExtremeTag::HornOrbit: return "HORN_ORBIT";
    case ExtremeTag::NonnegExtreme: return "NONNEG_EXTREME";
    case ExtremeTag::Unknown: return "UNKNOWN_EXTREME_CLASS";
  }
  return "UNKNOWN_EXTREME_CLASS";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
    case CheckStatus::GuardFailed: return "GUARD_FAILED";
  }
  return "GUARD_FAILED";
}

SymMat apply_orbit(const SymMat& b, const OrbitWitness& w) {
  const std::size_t n = b.order();
  if (w.d.size() != n || w.perm.size() != n)
    throw Error(ErrorCode::InvalidArgument, "witness size mismatch");
  SymMat a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, w.d[i] * w.d[j] * b(w.perm[i], w.perm[j]));
  return a;
}

namespace {

double weight(const SymMat& m, const SymMat& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) s += std::abs(m(i, j) * a(i, j));
  return s;
}

void require_same_order(const SymMat& m, const SymMat& a) {
  if (m.order() != a.order()) throw Error(ErrorCode::InvalidArgument, "order mismatch");
}

}  // namespace

bool orthogonal(const SymMat& m, const SymMat& a, const Tolerance& tol) {
  require_same_order(m, a);
  return std::abs(inner(m, a)) <= tol.abs + tol.rel * weight(m, a);
}

OrthColumnResult orth_column_check(const SymMat& m, const SymMat& a, const Tolerance& tol) {
  require_same_order(m, a);
  OrthColumnResult r;
  r.inner = inner(m, a);
  r.guard_ok = orthogonal(m, a, tol);
  if (!r.guard_ok) return r;
  const std::size_t n = m.order();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0, w = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      d += m(i, j) * a(j, i);
      w += std::abs(m(i, j) * a(j, i));
    }
    r.defect = std::max(r.defect, std::abs(d));
    scale = std::max(scale, w);
  }
  r.status = r.defect <= tol.abs + tol.rel * scale ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

OrthNullspaceResult orth_nullspace_check(const SymMat& m, const SymMat& a, const NonnegFactor& v,
                                         std::size_t i, const Tolerance& tol) {
  require_same_order(m, a);
  if (v.order() != m.order() || i >= m.order())
    throw Error(ErrorCode::InvalidArgument, "factor order or index out of range");
  OrthNullspaceResult r;
  if (!orthogonal(m, a, tol)) return r;
  for (std::size_t j = 0; j < v.cols(); ++j)
    if (v(i, j) <= tol.abs) {
      r.status = CheckStatus::Skip;
      return r;
    }
  const Vec mai = m.apply(a.dense().column(i));
  r.value = max_abs(mai);
  const double scale = static_cast<double>(m.order()) * m.max_abs() * a.max_abs();
  r.status = r.value <= tol.abs + tol.rel * scale ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

AntiDdResult anti_dd_check(const SymMat& m, const SymMat& a, const Tolerance& tol) {
  require_same_order(m, a);
  const std::size_t n = m.order();
  const double eps_m = tol.threshold(m.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    if (m(i, i) <= eps_m) throw Error(ErrorCode::ZeroRow, "M has a zero diagonal entry at " + std::to_string(i));
  AntiDdResult r;
  r.guard_ok = orthogonal(m, a, tol);
  Vec s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::sqrt(m(i, i));
  r.scaled = SymMat(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r.scaled.set(i, j, s[i] * s[j] * a(i, j));
  const double eps = tol.threshold(r.scaled.max_abs());
  r.all_pass = true;
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off += std::abs(r.scaled(i, j));
    const bool ok = r.scaled(i, i) <= off + eps;
    r.rows.push_back(ok);
    r.all_pass = r.all_pass && ok;
  }
  return r;
}

ZeroDiagResult zero_diag_reduce(const SymMat& a, const Tolerance& tol, bool claimed_extreme_not_nonneg) {
  const std::size_t n = a.order();
  const double eps = tol.threshold(a.max_abs());
  ZeroDiagResult r;
  for (std::size_t i = 0; i < n; ++i) (a(i, i) <= eps ? r.zero : r.kept).push_back(i);
  r.structure_ok = true;
  for (std::size_t i : r.zero)
    for (std::size_t j = 0; j < n; ++j) r.structure_ok = r.structure_ok && std::abs(a(i, j)) <= eps;
  if (!r.kept.empty()) r.s = a.principal(r.kept);
  r.violates_zeroext = claimed_extreme_not_nonneg && !r.structure_ok;
  return r;
}

std::optional<OrbitWitness> horn_orbit_recognize(const SymMat& a, const Tolerance& tol) {
  if (a.order() != 5) return std::nullopt;
  const double eps = tol.threshold(a.max_abs());
  Vec d(5);
  for (std::size_t i = 0; i < 5; ++i) {
    if (a(i, i) <= eps) return std::nullopt;
    d[i] = std::sqrt(a(i, i));
  }
  const SymMat h = horn();
  std::vector<std::size_t> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool match = true;
    for (std::size_t i = 0; i < 5 && match; ++i)
      for (std::size_t j = i + 1; j < 5 && match; ++j)
        match = std::abs(d[i] * d[j] * h(perm[i], perm[j]) - a(i, j)) <= eps;
    if (match) return OrbitWitness{d, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

bool nonneg_extreme_check(const SymMat& a, const Tolerance& tol) {
  if (is_nonneg(a, tol).answer != Answer::In) throw Error(ErrorCode::NotNonneg, "matrix has a negative entry");
  const double eps = tol.threshold(a.max_abs());
  std::size_t positive = 0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j)
      if (a(i, j) > eps) ++positive;
  return positive == 1;
}

namespace {

// A = a (e_i e_j^T + e_j e_i^T) up to tolerance, everything else zero.
std::optional<OrbitWitness> e12_recognize(const SymMat& a, double eps) {
  const std::size_t n = a.order();
  std::optional<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(a(i, j)) <= eps) continue;
      if (i == j || a(i, j) < 0.0 || pos) return std::nullopt;
      pos = {i, j};
    }
  if (!pos) return std::nullopt;
  const auto [i, j] = *pos;
  OrbitWitness w{Vec(n, 1.0), std::vector<std::size_t>(n)};
  w.d[i] = w.d[j] = std::sqrt(a(i, j));
  w.perm[i] = 0;
  w.perm[j] = 1;
  std::size_t next = 2;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i && k != j) w.perm[k] = next++;
  return w;
}

}  // namespace

ExtremeClass classify_rank12(const SymMat& a, const Tolerance& tol) {
  if (is_copositive(a, tol).answer == Answer::NotIn)
    throw Error(ErrorCode::NotCopositive, "matrix is not copositive");
  const std::size_t n = a.order();
  const double eps = tol.threshold(a.max_abs());
  ExtremeClass c;
  c.rank = num_rank(a, tol);

  if (c.rank == 1) {
    const auto eig = eig_sym(a);
    if (eig.values[0] > 0.0) {
      Vec x = eig.vectors.column(0);
      if (sum(x) < 0.0)
        for (double& v : x) v = -v;
      for (double& v : x) v *= std::sqrt(eig.values[0]);
      c.tag = ExtremeTag::PsdRank1;
      c.root = x;
    }
    return c;
  }
  if (c.rank == 2) {
    if (n >= 2)
      if (auto w = e12_recognize(a, eps)) {
        c.tag = ExtremeTag::E12Orbit;
        c.reference = e_pair(n, 0, 1);
        c.witness = w;
      }
    return c;
  }
  if (c.rank >= 3 && n >= 5) {
    const ZeroDiagResult z = zero_diag_reduce(a, tol);
    if (z.structure_ok && z.kept.size() == 5) {
      if (auto w = horn_orbit_recognize(*z.s, tol)) {
        OrbitWitness full{Vec(n, 1.0), std::vector<std::size_t>(n)};
        for (std::size_t k = 0; k < 5; ++k) {
          full.d[z.kept[k]] = w->d[k];
          full.perm[z.kept[k]] = w->perm[k];
        }
        for (std::size_t k = 0; k < z.zero.size(); ++k) full.perm[z.zero[k]] = 5 + k;
        c.tag = ExtremeTag::HornOrbit;
        c.reference = pad_zero(horn(), n);
        c.witness = full;
        return c;
      }
    }
  }
  if (is_nonneg(a, tol).answer == Answer::In && nonneg_extreme_check(a, tol)) c.tag = ExtremeTag::NonnegExtreme;
  return c;
}

Rank3Result rank3_witness_check(const SymMat& m, const SymMat& a, const Tolerance& tol) {
  require_same_order(m, a);
  Rank3Result r;
  r.m_positive = m.min_entry() > tol.abs;
  r.m_nonsingular = num_rank(m, tol) == m.order();
  r.orthogonal = orthogonal(m, a, tol);
  r.guard_ok = r.m_positive && r.m_nonsingular && r.orthogonal;
  r.rank_a = num_rank(a, tol);
  const double eps = tol.threshold(a.max_abs());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i + 1; j < a.order(); ++j)
      if (std::abs(a(i, i)) <= eps && std::abs(a(j, j)) <= eps && a(i, j) > eps) r.e12_block = true;
  r.pass = r.rank_a >= 3 && !r.e12_block;
  return r;
}

}  // namespace copcone
