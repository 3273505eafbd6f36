#pragma once

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "verlagerung/integer.hpp"

namespace vlg {

// Dense row-major matrix of unbounded integers. 0 x n and n x 0 shapes are
// legal and behave as empty sums.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const Vector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw PreconditionError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_column(std::size_t j, const Vector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  IntMatrix columns(std::size_t begin, std::size_t end) const {
    IntMatrix m(rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
    return m;
  }

  IntMatrix row_range(std::size_t begin, std::size_t end) const {
    IntMatrix m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
  }

  IntMatrix select_columns(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend Vector operator*(const IntMatrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw PreconditionError("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix difference shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend IntMatrix operator*(const Integer& k, IntMatrix a) {
    for (auto& x : a.data_) x *= k;
    return a;
  }

  // [a | b]
  static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) throw PreconditionError("hconcat row mismatch");
    IntMatrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }

  static IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.cols_) throw PreconditionError("vconcat column mismatch");
    IntMatrix m(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, j) = b(i, j);
    return m;
  }

  static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Matrix text format: "rows cols" followed by the entries row by row,
// whitespace separated.
inline IntMatrix read_matrix(std::istream& in) {
  long r = -1, c = -1;
  if (!(in >> r >> c) || r < 0 || c < 0) throw PreconditionError("matrix: expected 'rows cols' header");
  IntMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string tok;
      if (!(in >> tok)) throw PreconditionError("matrix: too few entries");
      if (m(i, j).set_str(tok, 10) != 0) throw PreconditionError("matrix: bad integer '" + tok + "'");
    }
  return m;
}

inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

}  // namespace vlg
