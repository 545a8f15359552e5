#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "copcone/matrix.hpp"
#include "copcone/nonneg_factor.hpp"
#include "copcone/tolerance.hpp"

namespace copcone {

enum class Cone { Nonneg, Psd, Copositive, Dnn, Cp, CpInterior };
enum class Answer { In, NotIn, Undecided };

std::string_view to_string(Cone cone);
std::string_view to_string(Answer answer);

/// x with x^T A x = value < 0. For copositivity x >= 0 and sum(x) = 1.
struct ViolationVector {
  Vec x;
  double value = 0.0;
};

/// Most negative entry of a matrix that is not entrywise nonnegative.
struct NegativeEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Smallest value of x^T A x found on the simplex when A was certified
/// copositive with a near-zero minimum.
struct BoundaryZero {
  Vec x;
  double value = 0.0;
};

struct FactorCertificate {
  NonnegFactor factor;
  double residual = 0.0;
};

/// Sufficient certificate for M = V V^T lying in the interior of the cp
/// cone: V has rank n and one entrywise-positive column.
struct InteriorCertificate {
  NonnegFactor factor;
  std::size_t positive_column = 0;
  std::size_t rank = 0;
};

using Certificate = std::variant<std::monostate, ViolationVector, NegativeEntry, BoundaryZero,
                                 FactorCertificate, InteriorCertificate>;

/// Work counters from the copositivity search.
struct SearchStats {
  std::size_t cells = 0;
  std::size_t exact_leaves = 0;
  std::size_t undecided_leaves = 0;
  int deepest = 0;
};

struct ConeVerdict {
  Cone cone = Cone::Nonneg;
  Answer answer = Answer::Undecided;
  Certificate certificate;
  SearchStats stats;
};

ConeVerdict is_nonneg(const SymMat& a, const Tolerance& tol = {});
ConeVerdict is_psd(const SymMat& a, const Tolerance& tol = {});
ConeVerdict is_dnn(const SymMat& m, const Tolerance& tol = {});

inline constexpr int kDefaultMaxDepth = 40;

/// Simplicial-partition branch and bound over the standard simplex.
///
/// A cell with vertex set {v_k} is evaluated through Q = [v_i^T A v_j]:
///  - some Q_kk < -eps refutes with x = v_k (x >= 0, sum 1);
///  - Q >= -eps entrywise, or Q with its positive off-diagonal part removed
///    being PSD to -eps, prunes the cell (x^T A x >= -eps on it);
///  - otherwise the longest edge is bisected, children visited depth-first.
/// Cells reaching `max_depth` are decided by an exact principal-submatrix
/// eigenvector test on Q. A leaf whose violation cannot be pushed below -eps
/// makes the verdict UNDECIDED unless another cell refutes.
/// Here eps = tol.threshold(max|A|).
ConeVerdict is_copositive(const SymMat& a, const Tolerance& tol = {}, int max_depth = kDefaultMaxDepth);

/// Zeros of x^T A x on the simplex with minimal support: for every support
/// S whose block A_SS has a one-dimensional kernel spanned by a positive
/// vector. Each returned x has |x^T A x| <= eps and |[Ax]_k| <= eps on its
/// support. Throws NotCopositive when is_copositive refutes A.
std::vector<Vec> copositive_boundary_zeros(const SymMat& a, const Tolerance& tol = {});

/// Certificate iff rank V = n and some column is entrywise > tol.abs.
/// nullopt means "not proven" (the condition is only sufficient).
std::optional<InteriorCertificate> cp_interior_certificate(const NonnegFactor& v,
                                                           const Tolerance& tol = {});

/// CP membership through an explicit factor: IN with FactorCertificate when
/// |V V^T - M| <= tol.threshold(max|M|) entrywise, UNDECIDED otherwise.
ConeVerdict verify_cp_factor(const SymMat& m, const NonnegFactor& v, const Tolerance& tol = {});

namespace detail {

struct ExactTestResult {
  bool copositive = true;
  Vec witness;  // on the simplex, when !copositive
};

/// Decides copositivity of Q + shift*I exactly (up to eigen-solver accuracy)
/// by checking, for every principal block, whether the span of eigenvectors
/// with eigenvalue < -shift contains a positive vector. Intended for n <= 12.
ExactTestResult principal_eigen_test(const SymMat& q, double shift);

}  // namespace detail

}  // namespace copcone
