#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "copcone/matrix.hpp"
#include "copcone/nonneg_factor.hpp"
#include "copcone/tolerance.hpp"

namespace copcone {

/// Lower end of the known bracket for the largest cp-rank in order n:
/// n for n <= 4, floor(n^2/4) otherwise.
int djl_lower(int n);

/// cp-rank bound in terms of the rank r: r for r <= 2, (r+1 choose 2) - 1 otherwise.
int babe(int r);

struct PnInterval {
  int lower = 0;
  int upper = 0;
};

/// Best known bracket for the largest cp-rank of order-n matrices.
PnInterval known_pn_interval(int n);

/// Relaxed upper for positive boundary matrices, b_n - 4 (n >= 5).
int known_pn_star_upper(int n);

enum class BoundRule { RankLb, FactorColumns, Babe, BnK1, Bn4, ZeroEntry, Horn15, KnownPn };
std::string_view to_string(BoundRule rule);

struct BoundEntry {
  int value = 0;
  BoundRule rule = BoundRule::KnownPn;
  std::string witness;
};

struct BoundReport {
  std::size_t n = 0;
  BoundEntry lower;
  std::vector<BoundEntry> uppers;
  int best_lower = 0;
  int best_upper = 0;
};

/// Uppers implied by a copositive A orthogonal to M (valid when M is cp).
/// Throws NotOrthogonal, NotCopositiveWitness.
std::vector<BoundEntry> witness_bound(const SymMat& m, const SymMat& a, const Tolerance& tol = {});

/// 2 * known upper for order n-1 when M has an entry that vanishes to tolerance.
std::optional<BoundEntry> zero_entry_bound(const SymMat& m, const Tolerance& tol = {});

/// Combines every applicable rule. Throws NotDnn, FactorMismatch,
/// InconsistentBounds (and the witness_bound errors).
BoundReport cp_rank_interval(const SymMat& m, const std::optional<NonnegFactor>& v = std::nullopt,
                             const std::vector<SymMat>& witnesses = {}, const Tolerance& tol = {});

/// Moving a positive definite Mbar along -e_n e_n^T: the largest delta with
/// Mbar - delta e_n e_n^T still PSD is 1 / (Mbar^{-1})_nn.
struct BoundaryShift {
  double delta = 0.0;
  SymMat m{1};  // Mbar - delta e_n e_n^T
};

/// Throws NotPositive unless Mbar is positive definite.
BoundaryShift psd_boundary_shift(const SymMat& mbar, const Tolerance& tol = {});

}  // namespace copcone
