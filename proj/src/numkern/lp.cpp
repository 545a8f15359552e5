#include "copcone/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copcone/error.hpp"

namespace copcone {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  // Row m_ holds reduced costs; its rhs entry holds -objective.
  double& cost(std::size_t j) { return at(m_, j); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
};

enum class PhaseOutcome { Optimal, Unbounded };

PhaseOutcome run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::size_t allowed_cols,
                         const LpOptions& opt, int& iterations) {
  bool bland = false;
  int degenerate = 0;
  for (;;) {
    if (++iterations > opt.max_iterations)
      throw Error(ErrorCode::Internal, "simplex iteration cap exceeded");

    std::size_t enter = allowed_cols;
    double best = -opt.pivot_tol;
    for (std::size_t j = 0; j < allowed_cols; ++j) {
      const double d = t.cost(j);
      if (d < best) {
        enter = j;
        if (bland) break;
        best = d;
      }
    }
    if (enter == allowed_cols) return PhaseOutcome::Optimal;

    std::size_t leave = t.rows();
    double ratio = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double r = std::max(t.rhs(i), 0.0) / a;
      if (leave == t.rows() || r < ratio - 1e-12 * (1.0 + ratio) ||
          (std::abs(r - ratio) <= 1e-12 * (1.0 + ratio) && basis[i] < basis[leave])) {
        leave = i;
        ratio = r;
      }
    }
    if (leave == t.rows()) return PhaseOutcome::Unbounded;

    degenerate = (ratio == 0.0) ? degenerate + 1 : 0;
    if (degenerate >= opt.degenerate_switch) bland = true;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

}  // namespace

LpResult lp_feasible(const LpProblem& p, const LpOptions& opt) {
  const std::size_t m = p.a.rows();
  const std::size_t k = p.a.cols();
  if (k > kLpMaxVariables)
    throw Error(ErrorCode::InvalidArgument,
                "LP has " + std::to_string(k) + " variables; limit is " + std::to_string(kLpMaxVariables));
  if (p.sense.size() != m || p.b.size() != m)
    throw Error(ErrorCode::InvalidArgument, "LP constraint dimensions disagree");
  if (p.minimize && p.minimize->size() != k)
    throw Error(ErrorCode::InvalidArgument, "LP objective length mismatch");

  std::size_t slacks = 0;
  for (Sense s : p.sense)
    if (s != Sense::Equal) ++slacks;
  const std::size_t n_real = k + slacks;  // structural + slack columns
  const std::size_t n_total = n_real + m; // + one artificial per row

  Tableau t(m, n_total);
  std::vector<std::size_t> basis(m);
  std::size_t slack_col = k;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) t.at(i, j) = p.a(i, j);
    if (p.sense[i] == Sense::LessEqual) t.at(i, slack_col++) = 1.0;
    if (p.sense[i] == Sense::GreaterEqual) t.at(i, slack_col++) = -1.0;
    t.rhs(i) = p.b[i];
    if (p.b[i] < 0.0)
      for (std::size_t j = 0; j <= n_total; ++j) t.at(i, j) = -t.at(i, j);
    t.at(i, n_real + i) = 1.0;
    basis[i] = n_real + i;
  }

  // Phase one: minimize the sum of artificials.
  for (std::size_t j = 0; j <= n_total; ++j) {
    double s = 0.0;
    if (j < n_real || j == n_total)
      for (std::size_t i = 0; i < m; ++i) s += t.at(i, j);
    t.cost(j) = (j < n_real || j == n_total) ? -s : 0.0;
  }
  int iterations = 0;
  run_simplex(t, basis, n_total, opt, iterations);

  LpResult result;
  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n_real) infeas += std::max(t.rhs(i), 0.0);
  result.infeasibility = infeas;
  const double scale = 1.0 + max_abs(p.b);
  if (infeas > opt.feasibility_tol * scale) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis where possible; rows where
  // that fails are redundant.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n_real) continue;
    std::size_t col = n_real;
    double best = opt.pivot_tol;
    for (std::size_t j = 0; j < n_real; ++j)
      if (std::abs(t.at(i, j)) > best) {
        best = std::abs(t.at(i, j));
        col = j;
      }
    if (col < n_real) {
      t.pivot(i, col);
      basis[i] = col;
    }
  }

  result.status = LpStatus::Feasible;
  if (p.minimize) {
    const Vec& c = *p.minimize;
    for (std::size_t j = 0; j <= n_total; ++j) t.cost(j) = (j < k) ? c[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = basis[i] < k ? c[basis[i]] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_total; ++j) t.cost(j) -= cb * t.at(i, j);
    }
    if (run_simplex(t, basis, n_real, opt, iterations) == PhaseOutcome::Unbounded)
      result.status = LpStatus::Unbounded;
  }

  result.x.assign(k, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < k) result.x[basis[i]] = std::max(t.rhs(i), 0.0);
  if (p.minimize) result.objective = dot(*p.minimize, result.x);
  return result;
}

std::optional<Vec> conic_combination(const std::vector<Vec>& generators, const Vec& y,
                                     const LpOptions& options) {
  LpProblem p;
  p.a = Matrix::from_columns(y.size(), generators);
  p.sense.assign(y.size(), Sense::Equal);
  p.b = y;
  const LpResult r = lp_feasible(p, options);
  if (!r.feasible()) return std::nullopt;
  return r.x;
}

}  // namespace copcone
