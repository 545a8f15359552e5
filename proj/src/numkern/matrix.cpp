#include "copcone/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copcone/error.hpp"

namespace copcone {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

std::vector<std::size_t> support(std::span<const double> x, double threshold) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > threshold) idx.push_back(i);
  return idx;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw Error(ErrorCode::InvalidArgument, "column length mismatch");
    m.set_column(j, cols[j]);
  }
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Matrix::set_column(std::size_t j, std::span<const double> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const { return copcone::max_abs(data_); }

double Matrix::min_entry() const {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "shape mismatch in product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::InvalidArgument, "shape mismatch in sum");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::InvalidArgument, "shape mismatch in difference");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

Vec operator*(const Matrix& a, std::span<const double> x) {
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

// ---------------------------------------------------------------------------
// SymMat

SymMat::SymMat(std::size_t n) : n_(n), data_(n * (n + 1) / 2, 0.0) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix order must be positive");
}

SymMat SymMat::identity(std::size_t n) {
  SymMat a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, 1.0);
  return a;
}

SymMat SymMat::ones(std::size_t n) {
  SymMat a(n);
  std::fill(a.data_.begin(), a.data_.end(), 1.0);
  return a;
}

SymMat SymMat::from_dense(std::size_t n, std::span<const double> row_major, double sym_tol) {
  if (row_major.size() != n * n)
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(n * n) + " entries, got " +
                    std::to_string(row_major.size()));
  const double scale = std::max(1.0, copcone::max_abs(row_major));
  SymMat a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double aij = row_major[i * n + j];
      const double aji = row_major[j * n + i];
      if (std::abs(aij - aji) > sym_tol * scale)
        throw Error(ErrorCode::NotSymmetric, "entries (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") and transpose differ");
      a.set(i, j, 0.5 * (aij + aji));
    }
  return a;
}

SymMat SymMat::from_matrix(const Matrix& m, double sym_tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
  return from_dense(m.rows(), m.data(), sym_tol);
}

SymMat SymMat::gram(const Matrix& v) {
  SymMat a(v.rows());
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = i; j < v.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < v.cols(); ++k) s += v(i, k) * v(j, k);
      a.set(i, j, s);
    }
  return a;
}

void SymMat::set(std::size_t i, std::size_t j, double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
  data_[index(i, j)] = value;
}

Matrix SymMat::dense() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMat::max_abs() const { return copcone::max_abs(data_); }

double SymMat::min_entry() const { return *std::min_element(data_.begin(), data_.end()); }

Vec SymMat::diagonal() const {
  Vec d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

double SymMat::bilinear(std::span<const double> x, std::span<const double> y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += (*this)(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

Vec SymMat::apply(std::span<const double> x) const {
  Vec y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

SymMat SymMat::principal(std::span<const std::size_t> idx) const {
  SymMat s(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) s.set(a, b, (*this)(idx[a], idx[b]));
  return s;
}

SymMat& SymMat::operator+=(const SymMat& other) {
  if (other.n_ != n_) throw Error(ErrorCode::InvalidArgument, "order mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& other) {
  if (other.n_ != n_) throw Error(ErrorCode::InvalidArgument, "order mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SymMat& SymMat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
SymMat operator*(double s, SymMat a) { return a *= s; }

double inner(const SymMat& a, const SymMat& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::InvalidArgument, "order mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) s += a(i, j) * b(i, j);
  return s;
}

double max_abs_diff(const SymMat& a, const SymMat& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::InvalidArgument, "order mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

SymMat direct_sum(const SymMat& a, const SymMat& b) {
  const std::size_t n = a.order(), m = b.order();
  SymMat c(n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) c.set(i, j, a(i, j));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) c.set(n + i, n + j, b(i, j));
  return c;
}

SymMat pad_zero(const SymMat& a, std::size_t n) {
  if (n < a.order()) throw Error(ErrorCode::InvalidArgument, "cannot pad to a smaller order");
  SymMat c(n);
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) c.set(i, j, a(i, j));
  return c;
}

SymMat sym_outer(std::span<const double> x, std::span<const double> y) {
  SymMat a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) a.set(i, j, x[i] * y[j] + y[i] * x[j]);
  return a;
}

SymMat outer(std::span<const double> x) {
  SymMat a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) a.set(i, j, x[i] * x[j]);
  return a;
}

SymMat horn() {
  static constexpr double h[25] = {1,  -1, 1,  1,  -1,  //
                                   -1, 1,  -1, 1,  1,   //
                                   1,  -1, 1,  -1, 1,   //
                                   1,  1,  -1, 1,  -1,  //
                                   -1, 1,  1,  -1, 1};
  return SymMat::from_dense(5, h);
}

SymMat e_pair(std::size_t n, std::size_t i, std::size_t j) {
  if (i == j || i >= n || j >= n) throw Error(ErrorCode::InvalidArgument, "bad E_ij indices");
  SymMat a(n);
  a.set(i, j, 1.0);
  return a;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec e(n, 0.0);
  e.at(i) = 1.0;
  return e;
}

}  // namespace copcone
