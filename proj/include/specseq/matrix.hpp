#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "specseq/gfp.hpp"

namespace specseq {

struct Entry {
  std::uint32_t row;
  std::uint32_t value;  // residue in [1, p)
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse column: entries sorted by strictly increasing row, no zeros stored.
using SparseVector = std::vector<Entry>;

/// Matrix over GF(p) stored column-major as sparse columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Prime p) : rows_(rows), cols_(cols, SparseVector{}), p_(p) {}

  static Matrix identity(std::size_t n, Prime p) {
    Matrix m(n, n, p);
    for (std::size_t j = 0; j < n; ++j) m.cols_[j].push_back({static_cast<std::uint32_t>(j), 1});
    return m;
  }

  /// Builds from row-major integer entries (reduced mod p).
  static Matrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows, Prime p) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c, p);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (std::int64_t v : row) m.set(i, j++, v);
      ++i;
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_.size(); }
  Prime prime() const noexcept { return p_; }

  const SparseVector& column(std::size_t j) const { return cols_.at(j); }

  /// Appends a column. Entries must be sorted and nonzero.
  void push_column(SparseVector col) {
    if (!col.empty() && col.back().row >= rows_) throw std::out_of_range("column entry outside matrix rows");
    cols_.push_back(std::move(col));
  }

  Scalar at(std::size_t i, std::size_t j) const {
    const auto& col = cols_.at(j);
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const Entry& e, std::size_t r) { return e.row < r; });
    return Scalar(it != col.end() && it->row == i ? it->value : 0, p_);
  }

  void set(std::size_t i, std::size_t j, std::int64_t value) {
    if (i >= rows_) throw std::out_of_range("row index");
    auto& col = cols_.at(j);
    std::uint32_t v = p_.reduce(value);
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const Entry& e, std::size_t r) { return e.row < r; });
    if (it != col.end() && it->row == i) {
      if (v == 0) col.erase(it);
      else it->value = v;
    } else if (v != 0) {
      col.insert(it, Entry{static_cast<std::uint32_t>(i), v});
    }
  }

  bool is_zero() const noexcept {
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVector& c) { return c.empty(); });
  }

  std::size_t nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }

  /// Applies this matrix to a sparse vector of length cols().
  SparseVector apply(const SparseVector& x) const {
    std::vector<std::uint32_t> acc(rows_, 0);
    for (const Entry& e : x) {
      for (const Entry& a : cols_.at(e.row)) acc[a.row] = p_.add(acc[a.row], p_.mul(a.value, e.value));
    }
    SparseVector out;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (acc[i] != 0) out.push_back({static_cast<std::uint32_t>(i), acc[i]});
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.p_ == b.p_)) throw std::logic_error("matrix product across different primes");
    if (a.cols() != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(a.rows_, 0, a.p_);
    out.cols_.reserve(b.cols());
    for (const auto& col : b.cols_) out.cols_.push_back(a.apply(col));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols(), 0, p_);
    std::vector<SparseVector> rows(rows_);
    for (std::size_t j = 0; j < cols(); ++j) {
      for (const Entry& e : cols_[j]) rows[e.row].push_back({static_cast<std::uint32_t>(j), e.value});
    }
    t.cols_ = std::move(rows);
    return t;
  }

  /// Columns [first, first + count).
  Matrix column_range(std::size_t first, std::size_t count) const {
    Matrix m(rows_, 0, p_);
    m.cols_.assign(cols_.begin() + static_cast<std::ptrdiff_t>(first),
                   cols_.begin() + static_cast<std::ptrdiff_t>(first + count));
    return m;
  }

  /// Keeps rows with index >= first_row and renumbers them from zero.
  Matrix drop_leading_rows(std::size_t first_row) const {
    first_row = std::min(first_row, rows_);
    Matrix m(rows_ - first_row, 0, p_);
    for (const auto& col : cols_) {
      SparseVector c;
      for (const Entry& e : col) {
        if (e.row >= first_row) c.push_back({static_cast<std::uint32_t>(e.row - first_row), e.value});
      }
      m.cols_.push_back(std::move(c));
    }
    return m;
  }

  /// Same columns viewed in a taller ambient space (new rows are zero).
  Matrix with_rows(std::size_t rows) const {
    if (rows < rows_) throw std::invalid_argument("with_rows cannot shrink");
    Matrix m = *this;
    m.rows_ = rows;
    return m;
  }

  /// Horizontal concatenation [a | b].
  friend Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hcat row mismatch");
    Matrix m = a;
    m.cols_.insert(m.cols_.end(), b.cols_.begin(), b.cols_.end());
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << m.rows_ << 'x' << m.cols() << " over GF(" << m.p_.value() << ")\n";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j).value();
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> cols_;
  Prime p_;
};

}  // namespace specseq
