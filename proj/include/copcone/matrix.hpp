#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace copcone {

using Vec = std::vector<double>;

double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
double sum(std::span<const double> x);

/// Indices i with x_i > threshold.
std::vector<std::size_t> support(std::span<const double> x, double threshold);

/// Dense row-major rectangular matrix. Used for eigenvector bases, factors
/// and intermediate products; symmetric data lives in SymMat.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);
  /// Columns given as vectors of equal length.
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vec column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> v);
  Matrix transpose() const;
  double max_abs() const;
  double min_entry() const;

  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, std::span<const double> x);

/// Real symmetric matrix of order n >= 1 with packed upper-triangle storage,
/// so A(i,j) and A(j,i) address the same value. Entries are always finite.
class SymMat {
 public:
  explicit SymMat(std::size_t n);

  static SymMat identity(std::size_t n);
  static SymMat ones(std::size_t n);
  /// Row-major n*n data; throws NotSymmetric when |a_ij - a_ji| exceeds
  /// `sym_tol * max(1, max|a|)`. The stored value is the average.
  static SymMat from_dense(std::size_t n, std::span<const double> row_major,
                           double sym_tol = 1e-12);
  /// Symmetric part of a square Matrix, with the same symmetry check.
  static SymMat from_matrix(const Matrix& m, double sym_tol = 1e-12);
  /// V V^T.
  static SymMat gram(const Matrix& v);

  std::size_t order() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double value);

  Matrix dense() const;
  double max_abs() const;
  double min_entry() const;
  Vec diagonal() const;

  /// x^T A y.
  double bilinear(std::span<const double> x, std::span<const double> y) const;
  double quadratic(std::span<const double> x) const { return bilinear(x, x); }
  Vec apply(std::span<const double> x) const;

  /// Principal submatrix on the given (sorted or unsorted) index list.
  SymMat principal(std::span<const std::size_t> idx) const;

  SymMat& operator+=(const SymMat& other);
  SymMat& operator-=(const SymMat& other);
  SymMat& operator*=(double s);

  bool operator==(const SymMat& other) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) {
      const std::size_t t = i;
      i = j;
      j = t;
    }
    return i * n_ - i * (i + 1) / 2 + j;
  }

  std::size_t n_;
  std::vector<double> data_;
};

SymMat operator+(SymMat a, const SymMat& b);
SymMat operator-(SymMat a, const SymMat& b);
SymMat operator*(double s, SymMat a);

/// Frobenius scalar product <A, B> = sum_ij A_ij B_ij.
double inner(const SymMat& a, const SymMat& b);
/// max_ij |A_ij - B_ij|.
double max_abs_diff(const SymMat& a, const SymMat& b);
/// A (+) B.
SymMat direct_sum(const SymMat& a, const SymMat& b);
/// A (+) 0 padded to order n.
SymMat pad_zero(const SymMat& a, std::size_t n);
/// x y^T + y x^T.
SymMat sym_outer(std::span<const double> x, std::span<const double> y);
SymMat outer(std::span<const double> x);

/// The 5x5 Horn matrix.
SymMat horn();
/// e_i e_j^T + e_j e_i^T in order n (0-based indices, i != j).
SymMat e_pair(std::size_t n, std::size_t i, std::size_t j);
Vec unit(std::size_t n, std::size_t i);

}  // namespace copcone
