#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "toric/int_matrix.hpp"

namespace toric {

/// Smith normal form  left * A * right = diag(d_1, ..., d_k),  k = min(rows, cols),
/// with d_i >= 0 and d_1 | d_2 | ... (trailing zeros allowed).  Both transforms
/// are unimodular; their exact inverses are carried along since most callers
/// need them (kernels, saturations, quotient bases).
struct SnfResult {
  std::vector<Int> diagonal;
  IntMatrix left, right;
  IntMatrix left_inv, right_inv;

  std::size_t rank() const {
    std::size_t r = 0;
    for (const Int& d : diagonal)
      if (d != 0) ++r;
    return r;
  }
};

namespace detail {

// Truncated quotient is what cpp_int's operator/ gives; floor is needed when
// reducing entries above an HNF pivot into [0, pivot).
inline Int floor_div(const Int& a, const Int& b) {
  assert(b > 0);
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

struct SnfWorker {
  IntMatrix s, l, linv, r, rinv;

  explicit SnfWorker(const IntMatrix& a)
      : s(a),
        l(IntMatrix::identity(a.rows())),
        linv(IntMatrix::identity(a.rows())),
        r(IntMatrix::identity(a.cols())),
        rinv(IntMatrix::identity(a.cols())) {}

  void swap_rows(std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    l.swap_rows(a, b);
    linv.swap_columns(a, b);
  }
  void swap_columns(std::size_t a, std::size_t b) {
    s.swap_columns(a, b);
    r.swap_columns(a, b);
    rinv.swap_rows(a, b);
  }
  void negate_row(std::size_t i) {
    s.negate_row(i);
    l.negate_row(i);
    linv.negate_column(i);
  }
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
    s.add_row_multiple(dst, src, c);
    l.add_row_multiple(dst, src, c);
    linv.add_column_multiple(src, dst, -c);
  }
  void add_column_multiple(std::size_t dst, std::size_t src, const Int& c) {
    s.add_column_multiple(dst, src, c);
    r.add_column_multiple(dst, src, c);
    rinv.add_row_multiple(src, dst, -c);
  }

  // Minimal-absolute-value nonzero pivot in the trailing submatrix, ties broken
  // by lowest row then lowest column, so outputs are reproducible.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j) {
        const Int& v = s(i, j);
        if (v == 0) continue;
        Int a = abs(v);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  void run() {
    const std::size_t m = s.rows(), n = s.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_columns(t, pj);

      for (;;) {
        // Clear column t below the pivot.  A nonzero remainder is strictly
        // smaller than the pivot; swapping it up makes progress.
        bool restart = false;
        for (std::size_t i = t + 1; i < m && !restart; ++i) {
          if (s(i, t) == 0) continue;
          add_row_multiple(i, t, -(s(i, t) / s(t, t)));
          if (s(i, t) != 0) {
            swap_rows(t, i);
            restart = true;
          }
        }
        if (restart) continue;
        // Clear row t right of the pivot.  A column swap can re-dirty the
        // column, hence the restart.
        for (std::size_t j = t + 1; j < n && !restart; ++j) {
          if (s(t, j) == 0) continue;
          add_column_multiple(j, t, -(s(t, j) / s(t, t)));
          if (s(t, j) != 0) {
            swap_columns(t, j);
            restart = true;
          }
        }
        if (restart) continue;
        // Divisibility sweep: fold a row with a non-divisible entry into row t
        // and re-eliminate; the pivot strictly shrinks, so this terminates.
        for (std::size_t i = t + 1; i < m && !restart; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (s(i, j) % s(t, t) != 0) {
              add_row_multiple(t, i, 1);
              restart = true;
              break;
            }
        if (!restart) break;
      }
    }
    for (std::size_t i = 0; i < std::min(m, n); ++i)
      if (s(i, i) < 0) negate_row(i);
  }
};

}  // namespace detail

inline SnfResult smith_normal_form(const IntMatrix& a) {
  detail::SnfWorker w(a);
  w.run();
  SnfResult out;
  out.diagonal.resize(std::min(a.rows(), a.cols()));
  for (std::size_t i = 0; i < out.diagonal.size(); ++i) out.diagonal[i] = w.s(i, i);
  out.left = std::move(w.l);
  out.left_inv = std::move(w.linv);
  out.right = std::move(w.r);
  out.right_inv = std::move(w.rinv);
  return out;
}

inline std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

/// Columns form a Z-basis of { x : A x = 0 }.  Kernels of integer matrices are
/// saturated (direct summands), so no extra saturation step is needed.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  SnfResult snf = smith_normal_form(a);
  std::size_t r = snf.rank();
  return snf.right.column_slice(r, a.cols());
}

struct CokernelInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, in divisibility order
};

/// Finitely generated abelian group, as computed by SNF-based (co)homology.
struct CohomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

/// Invariants of coker(A) = Z^rows / im(A).
inline CokernelInvariants cokernel_invariants(const IntMatrix& a) {
  SnfResult snf = smith_normal_form(a);
  CokernelInvariants out;
  out.free_rank = a.rows() - snf.rank();
  for (const Int& d : snf.diagonal)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

/// Exact integer solution X of A X = B, if one exists.
inline std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b) {
  assert(a.rows() == b.rows());
  SnfResult snf = smith_normal_form(a);
  IntMatrix c = snf.left * b;
  const std::size_t m = a.rows(), n = a.cols(), p = b.cols();
  IntMatrix y(n, p);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < n && snf.diagonal[i] != 0) {
      for (std::size_t k = 0; k < p; ++k) {
        if (c(i, k) % snf.diagonal[i] != 0) return std::nullopt;
        y(i, k) = c(i, k) / snf.diagonal[i];
      }
    } else {
      for (std::size_t k = 0; k < p; ++k)
        if (c(i, k) != 0) return std::nullopt;
    }
  }
  return snf.right * y;
}

inline std::optional<IntVec> solve(const IntMatrix& a, const IntVec& b) {
  auto x = solve(a, IntMatrix::from_columns(b.size(), {b}));
  if (!x) return std::nullopt;
  return x->column(0);
}

/// Canonical basis (row-style Hermite normal form) of the lattice spanned by
/// the given row vectors: echelon rows with positive pivots and entries above
/// each pivot reduced into [0, pivot).
inline std::vector<IntVec> hermite_basis(std::size_t n, const std::vector<IntVec>& rows) {
  IntMatrix m = IntMatrix::from_rows(n, rows);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m.rows(); ++col) {
    for (;;) {
      // minimal |entry| at or below row r in this column
      std::size_t best = m.rows();
      for (std::size_t i = r; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        if (best == m.rows() || abs(m(i, col)) < abs(m(best, col))) best = i;
      }
      if (best == m.rows()) break;
      m.swap_rows(r, best);
      if (m(r, col) < 0) m.negate_row(r);
      bool clear = true;
      for (std::size_t i = r + 1; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        m.add_row_multiple(i, r, -(m(i, col) / m(r, col)));
        if (m(i, col) != 0) clear = false;
      }
      if (clear) break;
    }
    if (m(r, col) != 0) {
      for (std::size_t i = 0; i < r; ++i)
        m.add_row_multiple(i, r, -detail::floor_div(m(i, col), m(r, col)));
      ++r;
    }
  }
  std::vector<IntVec> out;
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) out.push_back(m.row(i));
  return out;
}

/// Fraction-free (Bareiss) determinant.
inline Int determinant(const IntMatrix& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix b = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (b(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && b(i, k) == 0) ++i;
      if (i == n) return 0;
      b.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        b(i, j) = (b(i, j) * b(k, k) - b(i, k) * b(k, j)) / prev;
    prev = b(k, k);
  }
  return sign * b(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  Int d = determinant(a);
  return d == 1 || d == -1;
}

/// Rank of A over the field F_p.
inline std::size_t rank_mod_p(const IntMatrix& a, long p) {
  assert(p >= 2);
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<long>> b(m, std::vector<long>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int v = a(i, j) % p;
      if (v < 0) v += p;
      b[i][j] = v.convert_to<long>();
    }
  auto inv_mod = [p](long x) {
    long r = 1, base = x % p, e = p - 2;  // p prime
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rnk = 0;
  for (std::size_t col = 0; col < n && rnk < m; ++col) {
    std::size_t piv = rnk;
    while (piv < m && b[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(b[rnk], b[piv]);
    long inv = inv_mod(b[rnk][col]);
    for (std::size_t i = rnk + 1; i < m; ++i) {
      if (b[i][col] == 0) continue;
      long f = b[i][col] * inv % p;
      for (std::size_t j = col; j < n; ++j)
        b[i][j] = ((b[i][j] - f * b[rnk][j]) % p + p) % p;
    }
    ++rnk;
  }
  return rnk;
}

/// True iff the columns are independent and span a saturated sublattice
/// (equivalently, every invariant factor is 1).
inline bool is_saturated_basis(const IntMatrix& cols) {
  SnfResult snf = smith_normal_form(cols);
  if (snf.rank() != cols.cols()) return false;
  for (const Int& d : snf.diagonal)
    if (d > 1) return false;
  return true;
}

}  // namespace toric
