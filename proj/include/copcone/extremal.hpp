#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "copcone/matrix.hpp"
#include "copcone/nonneg_factor.hpp"
#include "copcone/tolerance.hpp"

namespace copcone {

/// A = D P^T B P D with D = diag(d) > 0, i.e. A_ij = d_i d_j B_{perm[i] perm[j]}.
struct OrbitWitness {
  Vec d;
  std::vector<std::size_t> perm;
};

SymMat apply_orbit(const SymMat& b, const OrbitWitness& w);

enum class ExtremeTag { PsdRank1, E12Orbit, HornOrbit, NonnegExtreme, Unknown };
std::string_view to_string(ExtremeTag tag);

struct ExtremeClass {
  ExtremeTag tag = ExtremeTag::Unknown;
  std::size_t rank = 0;
  /// Reference matrix B of the orbit (E12 or H padded with zeros) and the witness.
  std::optional<SymMat> reference;
  std::optional<OrbitWitness> witness;
  /// A = x x^T for PsdRank1.
  std::optional<Vec> root;
};

enum class CheckStatus { Pass, Fail, Skip, GuardFailed };
std::string_view to_string(CheckStatus s);

/// |<A, M>| against tol.abs + tol.rel * sum_ij |M_ij A_ij|.
bool orthogonal(const SymMat& m, const SymMat& a, const Tolerance& tol = {});

struct OrthColumnResult {
  bool guard_ok = false;  // <A, M> vanishes to tolerance
  double inner = 0.0;
  double defect = 0.0;    // max_i |(MA)_ii|
  CheckStatus status = CheckStatus::GuardFailed;
};

/// Column i of M is orthogonal to column i of A for every i.
OrthColumnResult orth_column_check(const SymMat& m, const SymMat& a, const Tolerance& tol = {});

struct OrthNullspaceResult {
  CheckStatus status = CheckStatus::GuardFailed;
  double value = 0.0;  // ||M A e_i||_inf when run
};

/// When index i lies in the support of every column of V, column i of A is
/// in the nullspace of M. Skip when the support hypothesis fails.
OrthNullspaceResult orth_nullspace_check(const SymMat& m, const SymMat& a, const NonnegFactor& v,
                                         std::size_t i, const Tolerance& tol = {});

struct AntiDdResult {
  bool guard_ok = false;
  SymMat scaled{1};          // Abar = D^{-1} A D^{-1}, D = diag(1/sqrt(M_ii))
  std::vector<bool> rows;    // Abar_ii <= sum_{j!=i} |Abar_ij| + eps
  bool all_pass = false;
};

/// Throws ZeroRow when some M_ii <= tol.
AntiDdResult anti_dd_check(const SymMat& m, const SymMat& a, const Tolerance& tol = {});

struct ZeroDiagResult {
  std::vector<std::size_t> zero;  // Z = {i : A_ii <= eps}
  std::vector<std::size_t> kept;
  std::optional<SymMat> s;        // principal block on kept; empty when kept is empty
  bool structure_ok = false;      // rows/columns of Z vanish
  bool violates_zeroext = false;  // claim given and structure_ok false
};

/// `claimed_extreme_not_nonneg`: caller asserts A is extreme and has a
/// negative entry; in that case a broken zero structure refutes the claim.
ZeroDiagResult zero_diag_reduce(const SymMat& a, const Tolerance& tol = {},
                                bool claimed_extreme_not_nonneg = false);

/// Lexicographically first permutation (with d_i = sqrt(A_ii)) mapping H onto A.
std::optional<OrbitWitness> horn_orbit_recognize(const SymMat& a, const Tolerance& tol = {});

/// Exactly one positive entry on or above the diagonal. Throws NotNonneg.
bool nonneg_extreme_check(const SymMat& a, const Tolerance& tol = {});

/// Classification of a (caller-asserted) extreme copositive matrix.
/// Throws NotCopositive.
ExtremeClass classify_rank12(const SymMat& a, const Tolerance& tol = {});

struct Rank3Result {
  bool m_positive = false;
  bool m_nonsingular = false;
  bool orthogonal = false;
  bool guard_ok = false;   // all three above
  std::size_t rank_a = 0;
  bool e12_block = false;  // some i<j with A_ii = A_jj = 0 < A_ij
  bool pass = false;       // rank_a >= 3 && !e12_block
};

Rank3Result rank3_witness_check(const SymMat& m, const SymMat& a, const Tolerance& tol = {});

}  // namespace copcone
