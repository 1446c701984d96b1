#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullcone/field.hpp"

namespace nullcone {

template <class T>
struct ScalarContext;

template <>
struct ScalarContext<FieldScalar> {
  Field field;
  FieldScalar zero() const { return FieldScalar::zero(field); }
  FieldScalar one() const { return FieldScalar::one(field); }
  FieldScalar from_long(long v) const { return FieldScalar(field, v); }
  bool is_zero(const FieldScalar& x) const { return x.is_zero(); }
  double magnitude(const FieldScalar& x) const { return x.is_zero() ? 0.0 : 1.0; }
  bool same(const ScalarContext& o) const { return field == o.field; }
};

using Complex = std::complex<double>;

template <>
struct ScalarContext<Complex> {
  double eps = 1e-12;
  Complex zero() const { return {0.0, 0.0}; }
  Complex one() const { return {1.0, 0.0}; }
  Complex from_long(long v) const { return {static_cast<double>(v), 0.0}; }
  bool is_zero(const Complex& x) const { return std::abs(x) <= eps; }
  double magnitude(const Complex& x) const { return std::abs(x); }
  bool same(const ScalarContext&) const { return true; }
};

/// Dense row-major matrix over an exact field or over complex doubles.
template <class T>
class Matrix {
 public:
  using Context = ScalarContext<T>;

  Matrix() = default;
  Matrix(Context ctx, int rows, int cols)
      : ctx_(ctx), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows * cols), ctx.zero()) {}

  static Matrix identity(Context ctx, int n) {
    Matrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ctx.one();
    return m;
  }
  static Matrix from_longs(Context ctx, const std::vector<std::vector<long>>& v) {
    int r = static_cast<int>(v.size());
    int c = r ? static_cast<int>(v[0].size()) : 0;
    Matrix m(ctx, r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = ctx.from_long(v[i][j]);
    return m;
  }

  const Context& ctx() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& at(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& at(int i, int j) const { return e_[static_cast<std::size_t>(i * cols_ + j)]; }

  Matrix transpose() const {
    Matrix t(ctx_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix c(a.ctx_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a.at(i, k);
        if (a.ctx_.is_zero(aik) && a.ctx_.magnitude(aik) == 0.0) continue;
        for (int j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_shape(b);
    for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] += b.e_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_shape(b);
    for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] -= b.e_[k];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.e_) x = s * x;
    return a;
  }
  Matrix operator-() const {
    Matrix a = *this;
    for (auto& x : a.e_) x = -x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix b(ctx_, nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
    return b;
  }
  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
  }
  Matrix column(int j) const { return block(0, j, rows_, 1); }
  Matrix columns(int from, int count) const { return block(0, from, rows_, count); }
  Matrix select_columns(const std::vector<int>& idx) const {
    Matrix m(ctx_, rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, static_cast<int>(j)) = at(i, idx[j]);
    return m;
  }
  Matrix select_rows(const std::vector<int>& idx) const {
    Matrix m(ctx_, static_cast<int>(idx.size()), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (int j = 0; j < cols_; ++j) m.at(static_cast<int>(i), j) = at(idx[i], j);
    return m;
  }
  void swap_rows(int a, int b) {
    for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }
  void swap_cols(int a, int b) {
    for (int i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }

  /// Row echelon form; returns the pivot columns.
  std::vector<int> echelon(Matrix* companion = nullptr) {
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < cols_ && row < rows_; ++c) {
      int best = -1;
      double best_mag = 0.0;
      for (int r = row; r < rows_; ++r) {
        double mg = ctx_.magnitude(at(r, c));
        if (!ctx_.is_zero(at(r, c)) && mg > best_mag) {
          best = r;
          best_mag = mg;
          if constexpr (std::is_same_v<T, FieldScalar>) break;
        }
      }
      if (best < 0) continue;
      swap_rows(row, best);
      if (companion) companion->swap_rows(row, best);
      T inv = ctx_.one() / at(row, c);
      for (int j = 0; j < cols_; ++j) at(row, j) *= inv;
      if (companion)
        for (int j = 0; j < companion->cols_; ++j) companion->at(row, j) *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == row || ctx_.is_zero(at(r, c))) continue;
        T f = at(r, c);
        for (int j = 0; j < cols_; ++j) at(r, j) -= f * at(row, j);
        if (companion)
          for (int j = 0; j < companion->cols_; ++j) companion->at(r, j) -= f * companion->at(row, j);
      }
      pivots.push_back(c);
      ++row;
    }
    return pivots;
  }

  int rank() const {
    Matrix m = *this;
    return static_cast<int>(m.echelon().size());
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    Matrix m = *this;
    Matrix inv = identity(ctx_, rows_);
    if (static_cast<int>(m.echelon(&inv).size()) < rows_) return std::nullopt;
    return inv;
  }

  T determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m = *this;
    T det = ctx_.one();
    for (int c = 0; c < cols_; ++c) {
      int best = -1;
      double best_mag = 0.0;
      for (int r = c; r < rows_; ++r) {
        double mg = ctx_.magnitude(m.at(r, c));
        if (!ctx_.is_zero(m.at(r, c)) && mg > best_mag) {
          best = r;
          best_mag = mg;
        }
      }
      if (best < 0) return ctx_.zero();
      if (best != c) {
        m.swap_rows(best, c);
        det = -det;
      }
      det *= m.at(c, c);
      T inv = ctx_.one() / m.at(c, c);
      for (int r = c + 1; r < rows_; ++r) {
        if (ctx_.is_zero(m.at(r, c))) continue;
        T f = m.at(r, c) * inv;
        for (int j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(c, j);
      }
    }
    return det;
  }

  bool is_zero() const {
    for (const auto& x : e_) {
      if (!ctx_.is_zero(x)) return false;
    }
    return true;
  }

  /// Frobenius norm; only meaningful for complex matrices.
  double frobenius() const {
    double s = 0.0;
    for (const auto& x : e_) s += ctx_.magnitude(x) * ctx_.magnitude(x);
    return std::sqrt(s);
  }

  const std::vector<T>& data() const { return e_; }

 private:
  void check_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  Context ctx_{};
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> e_;
};

using ExactMatrix = Matrix<FieldScalar>;
using ComplexMatrix = Matrix<Complex>;

std::string to_string(const ExactMatrix& m);

}  // namespace nullcone
