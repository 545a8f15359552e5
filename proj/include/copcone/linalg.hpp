#pragma once

#include <cstddef>
#include <vector>

#include "copcone/matrix.hpp"
#include "copcone/tolerance.hpp"

namespace copcone {

/// Eigenpairs of a symmetric matrix. `values` are sorted descending and
/// column k of `vectors` belongs to values[k]. Each eigenvector is
/// normalized to unit length with its largest-magnitude entry positive.
struct EigenDecomposition {
  Vec values;
  Matrix vectors;
};

/// Cyclic-by-rows Jacobi. Throws Internal if the sweep cap is exhausted.
EigenDecomposition eig_sym(const SymMat& a);

/// Number of eigenvalues with |lambda| > tol.threshold(max|A|).
std::size_t num_rank(const SymMat& a, const Tolerance& tol = {});

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
  /// When !psd: w with w^T A w < 0, scaled so its largest-magnitude entry is +1.
  Vec witness;
};

PsdResult psd_check(const SymMat& a, const Tolerance& tol = {});

/// Thin SVD A = U diag(s) W^T of an m x n matrix with m >= n via one-sided
/// Jacobi. s is descending; U columns belonging to zero singular values are
/// completed to an orthonormal set.
struct Svd {
  Matrix u;
  Vec s;
  Matrix w;
};

Svd svd(const Matrix& a);

/// Diagonally pivoted Cholesky A ~= L L^T, stopping once the largest
/// remaining pivot is <= tol.threshold(max|A|). L is n x r in the original
/// row order (it is triangular only after the pivot permutation).
struct PivotedCholesky {
  Matrix l;
  std::vector<std::size_t> pivots;
  /// Smallest remaining Schur-complement diagonal at termination; a value
  /// well below zero means A is not PSD.
  double residual_min_diagonal = 0.0;
};

PivotedCholesky pivoted_cholesky(const SymMat& a, const Tolerance& tol = {});

/// Orthonormal columns completing `q` (n x k, orthonormal columns) to a
/// basis of R^n; returns the n x (n-k) complement.
Matrix orthonormal_complement(const Matrix& q);

}  // namespace copcone
