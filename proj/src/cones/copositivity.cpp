#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "copcone/cones.hpp"
#include "copcone/error.hpp"
#include "copcone/linalg.hpp"
#include "copcone/lp.hpp"

namespace copcone {

namespace {

constexpr std::size_t kMaxCopositiveOrder = 12;
constexpr std::size_t kMaxCells = 4'000'000;

void require_small(const SymMat& a) {
  if (a.order() > kMaxCopositiveOrder)
    throw Error(ErrorCode::InvalidArgument,
                "copositivity routines support order <= " + std::to_string(kMaxCopositiveOrder));
}

std::vector<std::size_t> mask_indices(unsigned mask, std::size_t n) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (1u << i)) idx.push_back(i);
  return idx;
}

// Euclidean projection onto {x >= 0, sum x = 1}.
void project_to_simplex(Vec& x) {
  Vec u = x;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  for (double& v : x) v = std::max(v - theta, 0.0);
}

// Projected gradient descent of x^T A x on the simplex from x.
Vec polish(const SymMat& a, Vec x, int iterations = 2000) {
  const double lip = 2.0 * static_cast<double>(a.order()) * std::max(a.max_abs(), 1e-300);
  const double step = 1.0 / lip;
  double best = a.quadratic(x);
  Vec best_x = x;
  for (int it = 0; it < iterations; ++it) {
    const Vec g = a.apply(x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= 2.0 * step * g[i];
    project_to_simplex(x);
    const double v = a.quadratic(x);
    if (v < best - 1e-18) {
      best = v;
      best_x = x;
    } else if (v >= best) {
      break;
    }
  }
  return best_x;
}

struct Cell {
  std::vector<Vec> vertices;
  Matrix q;  // q(i,j) = v_i^T A v_j
  int depth = 0;
};

struct SearchState {
  const SymMat& a;
  double eps;
  int max_depth;
  SearchStats stats;
  bool refuted = false;
  ViolationVector violation;
  double min_value = std::numeric_limits<double>::infinity();
  Vec min_x;
};

bool try_refute(SearchState& s, const Vec& x) {
  const double value = s.a.quadratic(x);
  if (value < s.min_value) {
    s.min_value = value;
    s.min_x = x;
  }
  if (value < -s.eps) {
    s.refuted = true;
    s.violation = {x, value};
    return true;
  }
  return false;
}

// Q = P + N with P PSD and N >= 0: tried with N = 0 and with N holding
// every positive off-diagonal entry.
bool spn_prunable(const Matrix& q, double eps) {
  const std::size_t k = q.rows();
  SymMat whole(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) whole.set(i, j, 0.5 * (q(i, j) + q(j, i)));
  if (eig_sym(whole).values.back() >= -eps) return true;
  SymMat neg(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) neg.set(i, j, (i == j || q(i, j) < 0.0) ? q(i, j) : 0.0);
  const auto eig = eig_sym(neg);
  return eig.values.back() >= -eps;
}

Vec combine(const std::vector<Vec>& vertices, const Vec& lambda) {
  Vec x(vertices.front().size(), 0.0);
  for (std::size_t k = 0; k < vertices.size(); ++k)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += lambda[k] * vertices[k][i];
  const double s = sum(x);
  for (double& v : x) v /= s;
  return x;
}

// Returns false when the search should stop (refutation found).
bool process_leaf(SearchState& s, const Cell& cell) {
  ++s.stats.exact_leaves;
  const std::size_t k = cell.q.rows();
  SymMat q(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) q.set(i, j, 0.5 * (cell.q(i, j) + cell.q(j, i)));
  const auto exact = detail::principal_eigen_test(q, s.eps);
  if (exact.copositive) return true;
  Vec x = combine(cell.vertices, exact.witness);
  if (try_refute(s, x)) return false;
  if (try_refute(s, polish(s.a, x))) return false;
  ++s.stats.undecided_leaves;
  return true;
}

void search(SearchState& s) {
  const std::size_t n = s.a.order();
  std::vector<Cell> stack;
  {
    Cell root;
    for (std::size_t i = 0; i < n; ++i) root.vertices.push_back(unit(n, i));
    root.q = s.a.dense();
    stack.push_back(std::move(root));
  }

  while (!stack.empty()) {
    Cell cell = std::move(stack.back());
    stack.pop_back();
    ++s.stats.cells;
    s.stats.deepest = std::max(s.stats.deepest, cell.depth);
    if (s.stats.cells > kMaxCells) {
      ++s.stats.undecided_leaves;
      return;
    }

    double qmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (cell.q(k, k) < -s.eps && try_refute(s, cell.vertices[k])) return;
      if (cell.q(k, k) < s.min_value) {
        s.min_value = cell.q(k, k);
        s.min_x = cell.vertices[k];
      }
      for (std::size_t j = 0; j < n; ++j) qmin = std::min(qmin, cell.q(k, j));
    }
    if (qmin >= -s.eps) continue;
    if (spn_prunable(cell.q, s.eps)) continue;
    if (cell.depth >= s.max_depth) {
      if (!process_leaf(s, cell)) return;
      continue;
    }

    // Longest edge; ties resolved to the lexicographically first pair.
    std::size_t bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double d2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const double d = cell.vertices[i][r] - cell.vertices[j][r];
          d2 += d * d;
        }
        if (d2 > best * (1.0 + 1e-12)) {
          best = d2;
          bi = i;
          bj = j;
        }
      }

    Vec mid(n);
    for (std::size_t r = 0; r < n; ++r) mid[r] = 0.5 * (cell.vertices[bi][r] + cell.vertices[bj][r]);
    // Row of Q for the midpoint, from bilinearity.
    Vec qm(n);
    for (std::size_t k = 0; k < n; ++k) qm[k] = 0.5 * (cell.q(bi, k) + cell.q(bj, k));
    const double qmm = 0.25 * (cell.q(bi, bi) + 2.0 * cell.q(bi, bj) + cell.q(bj, bj));

    auto child = [&](std::size_t replaced) {
      Cell c{cell.vertices, cell.q, cell.depth + 1};
      c.vertices[replaced] = mid;
      for (std::size_t k = 0; k < n; ++k) {
        c.q(replaced, k) = qm[k];
        c.q(k, replaced) = qm[k];
      }
      c.q(replaced, replaced) = qmm;
      return c;
    };
    // Depth-first: the child replacing v_i is explored first.
    stack.push_back(child(bj));
    stack.push_back(child(bi));
  }
}

}  // namespace

namespace detail {

ExactTestResult principal_eigen_test(const SymMat& q, double shift) {
  const std::size_t n = q.order();
  if (n > kMaxCopositiveOrder) throw Error(ErrorCode::InvalidArgument, "order too large for exact test");
  ExactTestResult result;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const auto idx = mask_indices(mask, n);
    const SymMat block = q.principal(idx);
    const std::size_t k = idx.size();
    Vec x_local;
    if (k == 1) {
      if (block(0, 0) >= -shift) continue;
      x_local = {1.0};
    } else {
      const auto eig = eig_sym(block);
      std::vector<std::size_t> neg;
      for (std::size_t e = 0; e < k; ++e)
        if (eig.values[e] < -shift) neg.push_back(e);
      if (neg.empty()) continue;
      // Positive vector in the negative invariant subspace: E c >= 1 with c free.
      LpProblem lp;
      lp.a = Matrix(k, 2 * neg.size());
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < neg.size(); ++c) {
          lp.a(r, c) = eig.vectors(r, neg[c]);
          lp.a(r, neg.size() + c) = -eig.vectors(r, neg[c]);
        }
      lp.sense.assign(k, Sense::GreaterEqual);
      lp.b.assign(k, 1.0);
      const LpResult r = lp_feasible(lp);
      if (!r.feasible()) continue;
      x_local.assign(k, 0.0);
      for (std::size_t c = 0; c < neg.size(); ++c) {
        const double coef = r.x[c] - r.x[neg.size() + c];
        for (std::size_t row = 0; row < k; ++row) x_local[row] += coef * eig.vectors(row, neg[c]);
      }
      if (*std::min_element(x_local.begin(), x_local.end()) <= 0.0) continue;
    }
    const double s = sum(x_local);
    result.copositive = false;
    result.witness.assign(n, 0.0);
    for (std::size_t r = 0; r < k; ++r) result.witness[idx[r]] = x_local[r] / s;
    return result;
  }
  return result;
}

}  // namespace detail

namespace {

ConeVerdict search_verdict(const SymMat& a, const Tolerance& tol, int max_depth) {
  SearchState s{a, tol.threshold(a.max_abs()), max_depth, {}, false, {}, std::numeric_limits<double>::infinity(), {}};
  search(s);

  ConeVerdict v{Cone::Copositive, Answer::In, {}, s.stats};
  if (s.refuted) {
    v.answer = Answer::NotIn;
    v.certificate = s.violation;
    return v;
  }
  if (s.stats.undecided_leaves > 0) {
    v.answer = Answer::Undecided;
    return v;
  }
  if (!s.min_x.empty()) {
    const double value = a.quadratic(s.min_x);
    if (value <= s.eps) v.certificate = BoundaryZero{s.min_x, value};
  }
  return v;
}

}  // namespace

ConeVerdict is_copositive(const SymMat& a, const Tolerance& tol, int max_depth) {
  require_small(a);
  if (max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max_depth must be >= 1");
  const std::size_t n = a.order();
  const double eps = tol.threshold(a.max_abs());

  // A (near) zero diagonal entry with a nonnegative row can be dropped.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    bool drop = std::abs(a(i, i)) <= eps;
    for (std::size_t j = 0; j < n && drop; ++j) drop = a(i, j) >= -eps;
    if (!drop) kept.push_back(i);
  }
  if (kept.empty()) return {Cone::Copositive, Answer::In, {}, {}};

  // D A D with unit diagonal where A_ii > 0; the verdict is scale invariant.
  const std::size_t k = kept.size();
  Vec d(k, 1.0);
  for (std::size_t r = 0; r < k; ++r)
    if (a(kept[r], kept[r]) > eps) d[r] = 1.0 / std::sqrt(a(kept[r], kept[r]));
  SymMat b(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = r; c < k; ++c) b.set(r, c, d[r] * d[c] * a(kept[r], kept[c]));

  ConeVerdict v = search_verdict(b, tol, max_depth);
  auto lift = [&](const Vec& y) {
    Vec x(n, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < k; ++r) total += d[r] * y[r];
    for (std::size_t r = 0; r < k; ++r) x[kept[r]] = d[r] * y[r] / total;
    return x;
  };
  if (auto* vv = std::get_if<ViolationVector>(&v.certificate)) {
    vv->x = lift(vv->x);
    vv->value = a.quadratic(vv->x);
  } else if (auto* bz = std::get_if<BoundaryZero>(&v.certificate)) {
    bz->x = lift(bz->x);
    bz->value = a.quadratic(bz->x);
  }
  return v;
}

std::vector<Vec> copositive_boundary_zeros(const SymMat& a, const Tolerance& tol) {
  require_small(a);
  if (is_copositive(a, tol).answer == Answer::NotIn)
    throw Error(ErrorCode::NotCopositive, "matrix has a negative value on the simplex");
  const std::size_t n = a.order();
  const double eps = tol.threshold(a.max_abs());
  std::vector<Vec> zeros;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const auto idx = mask_indices(mask, n);
    const auto eig = eig_sym(a.principal(idx));
    std::size_t kernel_dim = 0, kernel_col = 0;
    for (std::size_t e = 0; e < idx.size(); ++e)
      if (std::abs(eig.values[e]) <= eps) {
        ++kernel_dim;
        kernel_col = e;
      }
    if (kernel_dim != 1) continue;
    Vec u = eig.vectors.column(kernel_col);
    if (sum(u) < 0.0)
      for (double& c : u) c = -c;
    if (*std::min_element(u.begin(), u.end()) <= eps) continue;
    const double s = sum(u);
    Vec x(n, 0.0);
    for (std::size_t r = 0; r < idx.size(); ++r) x[idx[r]] = u[r] / s;

    if (std::abs(a.quadratic(x)) > eps) continue;
    const Vec ax = a.apply(x);
    bool stationary = true;
    for (std::size_t k : idx) stationary = stationary && std::abs(ax[k]) <= eps;
    if (stationary) zeros.push_back(std::move(x));
  }
  return zeros;
}

}  // namespace copcone
