#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "copcone/cones.hpp"
#include "copcone/matrix.hpp"
#include "copcone/nonneg_factor.hpp"
#include "copcone/tolerance.hpp"

namespace copcone {

/// Rank-one expansion of a nonnegative diagonally dominant matrix:
///   M = sum_{i<j} M_ij (e_i+e_j)(e_i+e_j)^T + sum_i (M_ii - sum_{j!=i} M_ij) e_i e_i^T.
/// Pair columns come first (row-major i<j), then diagonal residuals; terms
/// with zero weight are omitted, so p <= n(n+1)/2.
/// Throws NotNonneg / NotDd when the input violates the hypothesis beyond tol.
NonnegFactor dd_factorize(const SymMat& m, const Tolerance& tol = {});

struct PositiveDdResult {
  NonnegFactor factor;
  InteriorCertificate certificate;
};

/// For positive diagonally dominant M of order n >= 3: first column
/// sqrt(mu) e with mu = min M_ij, remaining columns dd_factorize(M - mu J).
/// Throws OrderTooSmall (n <= 2), NotPositive, NotDd.
PositiveDdResult positive_dd_factorize(const SymMat& m, const Tolerance& tol = {});

struct PositifyResult {
  SymMat m;        // M0 + eps v v^T
  NonnegFactor v;  // V0 (I + delta x x^T), same column count as V0
  Vec perron;      // unit Perron vector of M0
  double delta = 0.0;
};

/// Makes a factor entrywise positive by moving along the Perron direction:
/// x = V0^T v / lambda, delta = (sqrt(1 + eps x^T x) - 1) / |x|^2,
/// V = V0 + delta (V0 x) x^T, so V V^T = M0 + eps v v^T.
/// Throws PerronNotPositive when M0 = V0 V0^T is reducible or its Perron
/// vector has a coordinate <= tol.abs.
PositifyResult perturb_positify(const NonnegFactor& v0, double eps, const Tolerance& tol = {});

struct SupportSplit {
  NonnegFactor containing;  // columns with index in their support
  NonnegFactor rest;        // columns vanishing at index
};

SupportSplit support_split(const NonnegFactor& v, std::size_t index);

/// Generators of the order-6 cones attached to the Horn block:
/// columns e1+e2, e2+e3, e3+e4, e4+e5, e5+e1, e6 (0-based internally).
Matrix horn_generators();

/// Rebuilds a factor of M = V V^T (order 6, M orthogonal to H (+) 0) with at
/// most 15 columns. Each column of V is written (LP) as a nonnegative
/// combination of {g_i, g_{i+1}, e6} for the lowest feasible i, columns are
/// grouped per i and each 3x3 group Gram matrix is refactored by
/// cp3_factorize. Throws NotOrthogonalToHorn, ColumnOutsideCones.
NonnegFactor horn_orthogonal_factorize(const NonnegFactor& v, const Tolerance& tol = {});

/// Nonnegative factor with at most n columns of a doubly nonnegative matrix
/// of order n <= 3. Throws NotDnn.
NonnegFactor cp3_factorize(const SymMat& y, const Tolerance& tol = {});

/// First k columns; throws KOutOfRange unless 1 <= k <= p.
NonnegFactor truncate_factor(const NonnegFactor& v, std::size_t k);

struct ContinuationResult {
  NonnegFactor factor;           // [Vbar + dV | Vtilde]
  Matrix square_block;           // Vbar + dV
  std::vector<double> residuals; // max-norm residual before each step and at exit
  int iterations = 0;
};

/// Newton continuation of a positive nonsingular square block: finds dV
/// with (Vbar + dV)(Vbar + dV)^T + Vtilde Vtilde^T = Mhat. Each step solves
/// the Lyapunov system dV V^T + V dV^T = R through the SVD V = U S W^T as
/// dV = U Z W^T with Z_ij = (U^T R U)_ij / (s_i + s_j).
/// Throws NotPositive (Vbar not positive or singular), NewtonDiverged,
/// PositivityLost.
ContinuationResult factor_continuation(const Matrix& vbar, const NonnegFactor& vtilde,
                                       const SymMat& mhat, const Tolerance& tol = {});

struct HeuristicOptions {
  int restarts = 12;
  int iterations = 4000;
  std::uint64_t seed = 20140101;
  /// Tried first (padded with zero columns) when present.
  std::optional<NonnegFactor> seed_factor;
};

/// Alternating projection between {B Q : Q orthogonal} (B a fixed p-column
/// root of M) and the nonnegative orthant, with random rotation restarts.
/// Success means a factor with at most p_target columns and residual
/// <= 1e-7 max|M|; nullopt is not a proof that none exists.
std::optional<NonnegFactor> heuristic_min_factor(const SymMat& m, std::size_t p_target,
                                                 const HeuristicOptions& options = {},
                                                 const Tolerance& tol = {});

}  // namespace copcone
