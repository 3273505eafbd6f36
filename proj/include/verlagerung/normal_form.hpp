#pragma once

#include <algorithm>
#include <optional>

#include "verlagerung/matrix.hpp"

namespace vlg {

// U * A * V = S with U, V unimodular and S diagonal, d1 | d2 | ... , di >= 0,
// zeros last. The exact inverses of U and V are carried along so that
// callers never need to invert a matrix.
struct SmithDecomposition {
  IntMatrix U, U_inv;
  IntMatrix S;
  IntMatrix V, V_inv;
  std::size_t rank = 0;

  Vector diagonal() const {
    Vector d(std::min(S.rows(), S.cols()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = S(i, i);
    return d;
  }
};

namespace detail {

struct SmithWork {
  IntMatrix A, U, Ui, V, Vi;

  // row i -= q * row t
  void row_sub(std::size_t i, std::size_t t, const Integer& q) {
    A.add_row(i, t, -q);
    U.add_row(i, t, -q);
    Ui.add_col(t, i, q);
  }
  // col j -= q * col t
  void col_sub(std::size_t j, std::size_t t, const Integer& q) {
    A.add_col(j, t, -q);
    V.add_col(j, t, -q);
    Vi.add_row(t, j, q);
  }
  void row_swap(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_rows(a, b);
    Ui.swap_cols(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
    Vi.swap_rows(a, b);
  }
  void row_neg(std::size_t r) {
    A.negate_row(r);
    U.negate_row(r);
    Ui.negate_col(r);
  }
};

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& input) {
  const std::size_t m = input.rows(), n = input.cols();
  detail::SmithWork w{input, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
                      IntMatrix::identity(n)};
  IntMatrix& A = w.A;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Pivot: nonzero entry of minimal absolute value in the trailing block.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (A(i, j) != 0 && (pi == m || abs(A(i, j)) < abs(A(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (A(i, t) != 0) {
          w.row_sub(i, t, floor_div(A(i, t), A(t, t)));
          if (A(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (A(t, j) != 0) {
          w.col_sub(j, t, floor_div(A(t, j), A(t, t)));
          if (A(t, j) != 0) clean = false;
        }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) {
            bi = t;
            bj = j;
          }
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      // Divisibility: the pivot must divide the whole trailing block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.row_sub(t, bad, Integer(-1));
    }
    if (A(t, t) < 0) w.row_neg(t);
  }

  SmithDecomposition out;
  out.rank = t;
  out.U = std::move(w.U);
  out.U_inv = std::move(w.Ui);
  out.V = std::move(w.V);
  out.V_inv = std::move(w.Vi);
  out.S = std::move(w.A);
  return out;
}

// Column-style Hermite normal form: the returned m x r matrix has full column
// rank r, spans the same lattice as the columns of A, is in column echelon
// form with positive pivots, and each entry left of a pivot lies in
// [0, pivot). Equal lattices give identical results.
inline IntMatrix hermite_normal_form(const IntMatrix& input) {
  IntMatrix H = input;
  const std::size_t m = H.rows(), n = H.cols();
  std::size_t pc = 0;
  for (std::size_t i = 0; i < m && pc < n; ++i) {
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (H(i, j) == 0) continue;
      const Integer a = H(i, pc), b = H(i, j);
      if (a == 0) {
        H.swap_cols(pc, j);
        continue;
      }
      auto [g, x, y] = extended_gcd(a, b);
      const Integer ag = a / g, bg = b / g;
      for (std::size_t r = 0; r < m; ++r) {
        Integer cp = H(r, pc), cj = H(r, j);
        H(r, pc) = x * cp + y * cj;
        H(r, j) = -bg * cp + ag * cj;
      }
    }
    if (H(i, pc) == 0) continue;
    if (H(i, pc) < 0) H.negate_col(pc);
    for (std::size_t k = 0; k < pc; ++k) H.add_col(k, pc, -floor_div(H(i, k), H(i, pc)));
    ++pc;
  }
  return H.columns(0, pc);
}

// Basis (as columns) of the integer kernel {x : A x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& A) {
  auto snf = smith_normal_form(A);
  return snf.V.columns(snf.rank, A.cols());
}

// Some integer solution of A x = b, or nullopt.
inline std::optional<Vector> solve_integer(const IntMatrix& A, const Vector& b) {
  if (b.size() != A.rows()) throw PreconditionError("solve_integer: shape mismatch");
  auto snf = smith_normal_form(A);
  Vector c = snf.U * b;
  Vector y(A.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < snf.rank) {
      if (c[i] % snf.S(i, i) != 0) return std::nullopt;
      y[i] = c[i] / snf.S(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

// Solves B x = v where B is a column Hermite normal form (full column rank).
inline std::optional<Vector> solve_echelon(const IntMatrix& B, Vector v) {
  Vector x(B.cols());
  std::size_t row = 0;
  for (std::size_t j = 0; j < B.cols(); ++j) {
    while (row < B.rows() && B(row, j) == 0) {
      if (v[row] != 0) return std::nullopt;
      ++row;
    }
    if (v[row] % B(row, j) != 0) return std::nullopt;
    x[j] = v[row] / B(row, j);
    for (std::size_t i = row; i < B.rows(); ++i) v[i] -= x[j] * B(i, j);
    ++row;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return std::nullopt;
  return x;
}

// Determinant by fraction-free elimination (Bareiss).
inline Integer determinant(IntMatrix A) {
  const std::size_t n = A.rows();
  if (n != A.cols()) throw PreconditionError("determinant of non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && A(r, k) == 0) ++r;
      if (r == n) return 0;
      A.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

inline std::size_t rank(const IntMatrix& A) { return smith_normal_form(A).rank; }

}  // namespace vlg
