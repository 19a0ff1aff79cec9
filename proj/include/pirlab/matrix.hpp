// Copyright 2026 The pirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIRLAB_MATRIX_HPP
#define PIRLAB_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "pirlab/field.hpp"

namespace pirlab {

using Vec = std::vector<FieldElement>;

/// Dense row-major matrix over a prime field.  Dimensions may be zero; an
/// empty matrix still knows its field.
class Matrix {
 public:
  Matrix(const PrimeField& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols),
        data_(rows * cols, field.zero()) {}

  static Matrix identity(const PrimeField& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Build from integer literals (reduced mod p); rows must be equal length.
  static Matrix from_rows(const PrimeField& field,
                          const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c)
        throw std::invalid_argument("ragged matrix literal");
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = field.element_signed(rows[i][j]);
    }
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const FieldElement& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vec row(std::size_t r) const {
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  void set_row(std::size_t r, const Vec& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
  }
  Vec column(std::size_t c) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, c));
    return v;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (field_ != rhs.field_)
      throw std::invalid_argument("matrix product over mixed fields");
    if (cols_ != rhs.rows_)
      throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t l = 0; l < cols_; ++l) {
        FieldElement a = (*this)(i, l);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j)
          out(i, j) += a * rhs(l, j);
      }
    return out;
  }

  /// Columns selected by (sorted or not) index list, order preserved.
  Matrix select_columns(const std::vector<int>& idx) const {
    Matrix out(field_, rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      int c = idx[j];
      if (c < 0 || static_cast<std::size_t>(c) >= cols_)
        throw std::out_of_range("column index out of range");
      for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, c);
    }
    return out;
  }

  /// Stack another matrix (same field and width) below this one.
  Matrix vstack(const Matrix& below) const {
    if (field_ != below.field_ || cols_ != below.cols_)
      throw std::invalid_argument("vstack shape mismatch");
    Matrix out(field_, rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(),
              out.data_.begin() + data_.size());
    return out;
  }

  Matrix append_row(const Vec& v) const {
    Matrix one_row(field_, 1, cols_);
    one_row.set_row(0, v);
    return vstack(one_row);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  /// Keep only the first `n` rows.
  void truncate_rows(std::size_t n) {
    rows_ = n;
    data_.resize(n * cols_, field_.zero());
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const FieldElement& x) { return x.is_zero(); });
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i == 0 ? "[" : " ") << "[";
      for (std::size_t j = 0; j < m.cols_; ++j)
        os << (j == 0 ? "" : " ") << m(i, j);
      os << "]" << (i + 1 == m.rows_ ? "]" : "\n");
    }
    if (m.rows_ == 0) os << "[]";
    return os;
  }

 private:
  PrimeField field_;
  std::size_t rows_, cols_;
  std::vector<FieldElement> data_;
};

struct RrefResult {
  Matrix matrix;  // reduced row echelon form, zero rows removed
  std::size_t rank;
  std::vector<std::size_t> pivots;  // pivot column per surviving row
};

/// Gauss-Jordan elimination.  The returned matrix has exactly `rank` rows.
inline RrefResult rref(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m(pr, c).is_zero()) ++pr;
    if (pr == rows) continue;
    m.swap_rows(r, pr);
    FieldElement inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      FieldElement f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);
  return RrefResult{std::move(m), r, std::move(pivots)};
}

inline std::size_t rank_of(const Matrix& m) { return rref(m).rank; }

/// Basis of the right null space {x : M x^T = 0}, one vector per row.
inline Matrix nullspace(const Matrix& m) {
  RrefResult red = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : red.pivots) is_pivot[c] = true;
  Matrix basis(m.field(), n - red.rank, n);
  std::size_t row = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(row, f) = m.field().one();
    for (std::size_t r = 0; r < red.rank; ++r)
      basis(row, red.pivots[r]) = -red.matrix(r, f);
    ++row;
  }
  return basis;
}

/// Is v in the row space of m?
inline bool row_space_contains(const Matrix& m, const Vec& v) {
  if (v.size() != m.cols())
    throw std::invalid_argument("vector length does not match matrix width");
  bool zero = std::all_of(v.begin(), v.end(),
                          [](const FieldElement& x) { return x.is_zero(); });
  if (zero) return true;
  return rank_of(m) == rank_of(m.append_row(v));
}

/// Solve A x = b for square invertible A; throws std::domain_error otherwise.
inline Vec solve_square(Matrix a, Vec b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("solve_square expects square system");
  // Eliminate on the augmented system.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && a(pr, c).is_zero()) ++pr;
    if (pr == n) throw std::domain_error("singular linear system");
    a.swap_rows(c, pr);
    std::swap(b[c], b[pr]);
    FieldElement inv = a(c, c).inverse();
    for (std::size_t j = c; j < n; ++j) a(c, j) *= inv;
    b[c] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      FieldElement f = a(i, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      b[i] -= f * b[c];
    }
  }
  return b;
}

inline Vec mat_vec(const Matrix& m, const Vec& x) {
  if (x.size() != m.cols())
    throw std::invalid_argument("mat_vec dimension mismatch");
  Vec out(m.rows(), m.field().zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

inline Vec vec_mat(const Vec& x, const Matrix& m) {
  if (x.size() != m.rows())
    throw std::invalid_argument("vec_mat dimension mismatch");
  Vec out(m.cols(), m.field().zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

inline FieldElement inner_product(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("inner product of mismatched vectors");
  FieldElement acc = a[0].field().zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace pirlab

#endif  // PIRLAB_MATRIX_HPP
