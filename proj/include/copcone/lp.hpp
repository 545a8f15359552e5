#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "copcone/matrix.hpp"

namespace copcone {

enum class Sense { LessEqual, Equal, GreaterEqual };

/// Dense linear constraints `a x (sense) b` over nonnegative variables x >= 0.
/// An optional objective is minimized once feasibility is established.
struct LpProblem {
  Matrix a;
  std::vector<Sense> sense;
  Vec b;
  std::optional<Vec> minimize;
};

struct LpOptions {
  double pivot_tol = 1e-10;
  /// Phase-one infeasibility accepted as zero, relative to 1 + max|b|.
  double feasibility_tol = 1e-9;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 50;
  int max_iterations = 5000;
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double objective = 0.0;
  /// Sum of artificial variables at the end of phase one.
  double infeasibility = 0.0;

  bool feasible() const { return status != LpStatus::Infeasible; }
};

/// Maximum number of structural variables accepted by the solver.
inline constexpr std::size_t kLpMaxVariables = 64;

/// Dense two-phase tableau simplex with Dantzig pricing and a Bland's-rule
/// fallback against cycling. Throws InvalidArgument above kLpMaxVariables
/// and Internal when the iteration cap is hit.
LpResult lp_feasible(const LpProblem& problem, const LpOptions& options = {});

/// Is y a nonnegative combination of the given generators? Returns the
/// coefficients when it is.
std::optional<Vec> conic_combination(const std::vector<Vec>& generators, const Vec& y,
                                     const LpOptions& options = {});

}  // namespace copcone
