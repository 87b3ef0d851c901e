#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

namespace toric {

// All lattice and cohomology computations run over exact arbitrary-precision
// integers.  Intermediate entries of normal-form computations can grow far
// beyond 64 bits even for small inputs, so fixed-width integers are never used.
using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}

  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      assert(r.size() == cols_);
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      assert(cols[j].size() == rows);
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  /// Matrix whose rows are the given vectors (all of length `cols`).
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVec>& rows) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == cols);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const Int& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

  bool is_zero() const {
    for (const Int& v : data_)
      if (v != 0) return false;
    return true;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& rhs) const {
    assert(cols_ == rhs.rows_);
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  IntVec operator*(const IntVec& v) const {
    assert(v.size() == cols_);
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  IntMatrix operator-(const IntMatrix& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
  }

  IntVec row(std::size_t i) const {
    IntVec out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }

  IntVec column(std::size_t j) const {
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  /// Copy of the rows [r0, r1).
  IntMatrix row_slice(std::size_t r0, std::size_t r1) const {
    assert(r0 <= r1 && r1 <= rows_);
    IntMatrix out(r1 - r0, cols_);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i - r0, j) = (*this)(i, j);
    return out;
  }

  /// Copy of the columns [c0, c1).
  IntMatrix column_slice(std::size_t c0, std::size_t c1) const {
    assert(c0 <= c1 && c1 <= cols_);
    IntMatrix out(rows_, c1 - c0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = c0; j < c1; ++j) out(i, j - c0) = (*this)(i, j);
    return out;
  }

  /// Write `block` into this matrix with top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& block) {
    assert(r0 + block.rows() <= rows_ && c0 + block.cols() <= cols_);
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        (*this)(r0 + i, c0 + j) = block(i, j);
  }

  /// Add `scale * block` into this matrix with top-left corner at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const IntMatrix& block, int scale) {
    assert(r0 + block.rows() <= rows_ && c0 + block.cols() <= cols_);
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        (*this)(r0 + i, c0 + j) += scale * block(i, j);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  void negate_column(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  /// row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
  }

  /// col[dst] += c * col[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
  }

private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

inline Int dot(const IntVec& a, const IntVec& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero_vector(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

inline IntVec negated(IntVec v) {
  for (Int& x : v) x = -x;
  return v;
}

/// Divide by the gcd of the entries, keeping the sign pattern.  The zero
/// vector is returned unchanged.
inline IntVec primitive_vector(IntVec v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << "]";
}

}  // namespace toric
