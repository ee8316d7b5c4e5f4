#pragma once

// Dense exact linear algebra over an ExactField: row reduction, rank, kernels,
// linear solves and inverses. Dimensions here are small (a few dozen), so
// plain Gauss-Jordan elimination is the right tool.

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "incalg/field.hpp"

namespace incalg {

template <ExactField F>
class Matrix {
 public:
  using Scalar = typename F::value_type;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const F& field)
      : rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(std::size_t n, const F& field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::vector<Scalar> column(std::size_t j) const {
    std::vector<Scalar> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  void set_column(std::size_t j, const std::vector<Scalar>& v) {
    assert(v.size() == rows_);
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  /// Appends the rows of `other` (same column count) below this matrix.
  void append_rows(const Matrix& other) {
    assert(other.cols_ == cols_ || rows_ == 0);
    if (rows_ == 0) cols_ = other.cols_;
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
  }

  void append_row(const std::vector<Scalar>& row) {
    assert(row.size() == cols_ || rows_ == 0);
    if (rows_ == 0) cols_ = row.size();
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

template <ExactField F>
Matrix<F> multiply(const F& field, const Matrix<F>& a, const Matrix<F>& b) {
  assert(a.cols() == b.rows());
  Matrix<F> c(a.rows(), b.cols(), field);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (field.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!field.is_zero(b(k, j))) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <ExactField F>
std::vector<typename F::value_type> multiply(const F& field, const Matrix<F>& a,
                                             const std::vector<typename F::value_type>& x) {
  assert(a.cols() == x.size());
  std::vector<typename F::value_type> y(a.rows(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!field.is_zero(x[j]) && !field.is_zero(a(i, j))) y[i] += a(i, j) * x[j];
  return y;
}

template <ExactField F>
struct RowEchelon {
  Matrix<F> reduced;                 ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <ExactField F>
RowEchelon<F> row_reduce(const F& field, Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && field.is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    auto inv = field.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || field.is_zero(m(i, col))) continue;
      auto factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!field.is_zero(m(row, j))) m(i, j) = m(i, j) - factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const F& field, const Matrix<F>& m) {
  return row_reduce(field, m).rank();
}

/// Basis of the null space {x : m x = 0}.
template <ExactField F>
std::vector<std::vector<typename F::value_type>> kernel(const F& field, const Matrix<F>& m) {
  auto ech = row_reduce(field, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<typename F::value_type>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::value_type> v(m.cols(), field.zero());
    v[free] = field.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Affine solution set of m x = b: a particular solution plus a null-space basis.
template <ExactField F>
struct AffineSolution {
  std::vector<typename F::value_type> particular;
  std::vector<std::vector<typename F::value_type>> directions;
};

template <ExactField F>
std::optional<AffineSolution<F>> solve(const F& field, const Matrix<F>& m,
                                       const std::vector<typename F::value_type>& b) {
  assert(b.size() == m.rows());
  Matrix<F> aug(m.rows(), m.cols() + 1, field);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto ech = row_reduce(field, aug);
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
  AffineSolution<F> sol;
  sol.particular.assign(m.cols(), field.zero());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) sol.particular[ech.pivots[r]] = ech.reduced(r, m.cols());
  sol.directions = kernel(field, m);
  return sol;
}

template <ExactField F>
std::optional<Matrix<F>> inverse(const F& field, const Matrix<F>& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n, field);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = field.one();
  }
  auto ech = row_reduce(field, aug);
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

}  // namespace incalg
