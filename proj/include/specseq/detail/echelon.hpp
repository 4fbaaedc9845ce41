#pragma once

// Column echelon kernels shared by the linalg routines. Columns are inserted
// left to right and reduced against earlier pivots; the pivot of a column is
// its lowest nonzero row index. Every reduced column keeps the combination of
// original columns that produced it, so kernel vectors and solutions come out
// of the same pass.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "specseq/matrix.hpp"

namespace specseq::detail {

inline constexpr std::uint32_t kNoPivot = std::numeric_limits<std::uint32_t>::max();

class DenseColumn {
 public:
  DenseColumn(const SparseVector& v, std::size_t length) : data_(length, 0) {
    for (const Entry& e : v) data_[e.row] = e.value;
  }
  explicit DenseColumn(std::size_t length) : data_(length, 0) {}

  std::uint32_t pivot(std::uint32_t from = 0) const {
    for (std::size_t i = from; i < data_.size(); ++i) {
      if (data_[i] != 0) return static_cast<std::uint32_t>(i);
    }
    return kNoPivot;
  }
  std::uint32_t get(std::uint32_t row) const { return data_[row]; }
  void set_unit(std::uint32_t row) { data_[row] = 1; }

  // this += c * other
  void axpy(std::uint32_t c, const DenseColumn& other, Prime p) {
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (other.data_[i] != 0) data_[i] = p.add(data_[i], p.mul(c, other.data_[i]));
    }
  }
  void scale(std::uint32_t c, Prime p) {
    for (auto& x : data_) x = p.mul(x, c);
  }
  SparseVector to_sparse() const {
    SparseVector out;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (data_[i] != 0) out.push_back({static_cast<std::uint32_t>(i), data_[i]});
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> data_;
};

class SparseColumn {
 public:
  SparseColumn(const SparseVector& v, std::size_t /*length*/) : data_(v) {}
  explicit SparseColumn(std::size_t /*length*/) {}

  std::uint32_t pivot(std::uint32_t = 0) const { return data_.empty() ? kNoPivot : data_.front().row; }
  std::uint32_t get(std::uint32_t row) const {
    for (const Entry& e : data_) {
      if (e.row == row) return e.value;
      if (e.row > row) break;
    }
    return 0;
  }
  void set_unit(std::uint32_t row) { data_ = {{row, 1}}; }

  void axpy(std::uint32_t c, const SparseColumn& other, Prime p) {
    SparseVector out;
    out.reserve(data_.size() + other.data_.size());
    auto a = data_.begin();
    auto b = other.data_.begin();
    while (a != data_.end() || b != other.data_.end()) {
      if (b == other.data_.end() || (a != data_.end() && a->row < b->row)) {
        out.push_back(*a++);
      } else if (a == data_.end() || b->row < a->row) {
        out.push_back({b->row, p.mul(c, b->value)});
        ++b;
      } else {
        std::uint32_t v = p.add(a->value, p.mul(c, b->value));
        if (v != 0) out.push_back({a->row, v});
        ++a;
        ++b;
      }
    }
    data_ = std::move(out);
  }
  void scale(std::uint32_t c, Prime p) {
    for (auto& e : data_) e.value = p.mul(e.value, c);
  }
  SparseVector to_sparse() const { return data_; }

 private:
  SparseVector data_;
};

template <class Column>
class Echelon {
 public:
  /// `height` is the vector length, `width` the number of columns that will
  /// be inserted (the length of combination vectors).
  Echelon(std::size_t height, std::size_t width, Prime p)
      : height_(height), width_(width), p_(p), pivot_slot_(height, kNoPivot) {}

  /// Reduces the next original column. Returns true when it is independent
  /// of the columns inserted before it.
  bool insert(const SparseVector& v) {
    std::uint32_t index = static_cast<std::uint32_t>(inserted_++);
    Column col(v, height_);
    Column combo(width_);
    combo.set_unit(index);
    std::uint32_t piv = col.pivot();
    while (piv != kNoPivot) {
      std::uint32_t slot = pivot_slot_[piv];
      if (slot == kNoPivot) break;
      std::uint32_t c = p_.neg(col.get(piv));
      col.axpy(c, reduced_[slot], p_);
      combo.axpy(c, combos_[slot], p_);
      piv = col.pivot(piv);
    }
    if (piv == kNoPivot) {
      kernel_.push_back(combo.to_sparse());
      return false;
    }
    std::uint32_t s = p_.inv(col.get(piv));
    col.scale(s, p_);
    combo.scale(s, p_);
    pivot_slot_[piv] = static_cast<std::uint32_t>(reduced_.size());
    reduced_.push_back(std::move(col));
    combos_.push_back(std::move(combo));
    pivot_columns_.push_back(index);
    return true;
  }

  std::size_t rank() const noexcept { return reduced_.size(); }
  const std::vector<std::uint32_t>& pivot_columns() const noexcept { return pivot_columns_; }
  const std::vector<SparseVector>& kernel() const noexcept { return kernel_; }

  /// Coefficients x over the inserted columns with A x = b, if b lies in
  /// their span.
  std::optional<SparseVector> solve(const SparseVector& b) const {
    Column col(b, height_);
    Column x(width_);
    std::uint32_t piv = col.pivot();
    while (piv != kNoPivot) {
      std::uint32_t slot = pivot_slot_[piv];
      if (slot == kNoPivot) return std::nullopt;
      std::uint32_t c = col.get(piv);
      col.axpy(p_.neg(c), reduced_[slot], p_);
      x.axpy(c, combos_[slot], p_);
      piv = col.pivot(piv);
    }
    return x.to_sparse();
  }

 private:
  std::size_t height_;
  std::size_t width_;
  Prime p_;
  std::size_t inserted_ = 0;
  std::vector<std::uint32_t> pivot_slot_;
  std::vector<Column> reduced_;
  std::vector<Column> combos_;
  std::vector<std::uint32_t> pivot_columns_;
  std::vector<SparseVector> kernel_;
};

/// Column count at and above which the sparse kernel is used.
inline constexpr std::size_t kSparseThreshold = 512;

/// Runs `fn(echelon)` on an echelon form of `m`'s columns, choosing dense or
/// sparse storage by column count.
template <class Fn>
decltype(auto) with_echelon(const Matrix& m, Fn&& fn) {
  auto run = [&](auto tag) -> decltype(auto) {
    using Column = decltype(tag);
    Echelon<Column> e(m.rows(), m.cols(), m.prime());
    for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column(j));
    return fn(e);
  };
  if (m.cols() < kSparseThreshold) return run(DenseColumn(std::size_t{0}));
  return run(SparseColumn(std::size_t{0}));
}

}  // namespace specseq::detail
