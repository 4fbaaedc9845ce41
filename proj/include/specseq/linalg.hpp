#pragma once

// Exact linear algebra over GF(p): rank, kernels, images, intersections and
// maps induced on subquotients. All bases are produced by deterministic
// elimination (leftmost column, lowest row index pivot), so repeated runs
// yield identical matrices.

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specseq/detail/echelon.hpp"
#include "specseq/matrix.hpp"

namespace specseq {

class NotWellDefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subspace of k^ambient_dim, given by independent basis columns.
class SubspaceRep {
 public:
  SubspaceRep() = default;

  /// Zero subspace.
  SubspaceRep(std::size_t ambient_dim, Prime p) : basis_(ambient_dim, 0, p) {}

  /// Wraps columns that the caller guarantees to be independent.
  static SubspaceRep from_independent(Matrix basis) {
    SubspaceRep s;
    s.basis_ = std::move(basis);
    return s;
  }

  /// Span of arbitrary columns.
  static SubspaceRep span(const Matrix& columns);

  /// Span of the first `count` coordinate vectors.
  static SubspaceRep coordinate_prefix(std::size_t ambient_dim, std::size_t count, Prime p) {
    Matrix m(ambient_dim, 0, p);
    for (std::size_t j = 0; j < count; ++j) m.push_column({{static_cast<std::uint32_t>(j), 1}});
    return from_independent(std::move(m));
  }

  static SubspaceRep whole(std::size_t ambient_dim, Prime p) {
    return coordinate_prefix(ambient_dim, ambient_dim, p);
  }

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  Prime prime() const noexcept { return basis_.prime(); }
  const Matrix& basis() const noexcept { return basis_; }

  bool contains(const SparseVector& v) const {
    if (v.empty()) return true;
    return detail::with_echelon(basis_, [&](const auto& e) { return e.solve(v).has_value(); });
  }

  bool contains(const SubspaceRep& other) const {
    for (std::size_t j = 0; j < other.dim(); ++j) {
      if (!contains(other.basis_.column(j))) return false;
    }
    return true;
  }

 private:
  Matrix basis_;
};

inline std::size_t rank(const Matrix& m) {
  return detail::with_echelon(m, [](const auto& e) { return e.rank(); });
}

/// Basis of the column span, made of the pivot columns of `m` in index order.
inline SubspaceRep image_basis(const Matrix& m) {
  return detail::with_echelon(m, [&](const auto& e) {
    Matrix b(m.rows(), 0, m.prime());
    for (std::uint32_t j : e.pivot_columns()) b.push_column(m.column(j));
    return SubspaceRep::from_independent(std::move(b));
  });
}

inline SubspaceRep kernel_basis(const Matrix& m) {
  return detail::with_echelon(m, [&](const auto& e) {
    Matrix b(m.cols(), 0, m.prime());
    for (const auto& v : e.kernel()) b.push_column(v);
    assert(b.cols() + e.rank() == m.cols());
    return SubspaceRep::from_independent(std::move(b));
  });
}

inline SubspaceRep SubspaceRep::span(const Matrix& columns) { return image_basis(columns); }

/// Some X with A X = B (columnwise), or nullopt if a column of B lies
/// outside the column span of A.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  return detail::with_echelon(a, [&](const auto& e) -> std::optional<Matrix> {
    Matrix x(a.cols(), 0, a.prime());
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto col = e.solve(b.column(j));
      if (!col) return std::nullopt;
      x.push_column(std::move(*col));
    }
    return x;
  });
}

inline SubspaceRep sum(const SubspaceRep& a, const SubspaceRep& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: ambient dimension mismatch");
  return SubspaceRep::span(hcat(a.basis(), b.basis()));
}

/// span(a) ∩ span(b), from the kernel of [A | B]: each kernel vector (x, y)
/// gives A x = -B y in the intersection.
inline SubspaceRep intersect(const SubspaceRep& a, const SubspaceRep& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw std::invalid_argument("intersect: ambient dimension mismatch (" + std::to_string(a.ambient_dim()) +
                                " vs " + std::to_string(b.ambient_dim()) + ")");
  }
  SubspaceRep k = kernel_basis(hcat(a.basis(), b.basis()));
  Matrix xs(a.dim(), 0, a.prime());
  for (std::size_t j = 0; j < k.dim(); ++j) {
    SparseVector top;
    for (const Entry& e : k.basis().column(j)) {
      if (e.row < a.dim()) top.push_back(e);
    }
    xs.push_column(std::move(top));
  }
  // A has independent columns, so the images of independent x's stay
  // independent.
  return SubspaceRep::from_independent(a.basis() * xs);
}

/// numerator / denominator, both inside k^ambient_dim with
/// denominator ⊆ numerator. The quotient basis consists of numerator basis
/// columns that stay independent modulo the denominator, taken in order.
class SubquotientRep {
 public:
  SubquotientRep() = default;

  SubquotientRep(SubspaceRep numerator, SubspaceRep denominator)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (numerator_.ambient_dim() != denominator_.ambient_dim()) {
      throw std::invalid_argument("subquotient: ambient dimension mismatch");
    }
    if (!numerator_.contains(denominator_)) {
      throw std::invalid_argument("subquotient: denominator not contained in numerator");
    }
    Matrix stacked = hcat(denominator_.basis(), numerator_.basis());
    quotient_basis_ = Matrix(ambient_dim(), 0, numerator_.prime());
    detail::with_echelon(stacked, [&](const auto& e) {
      for (std::uint32_t j : e.pivot_columns()) {
        if (j >= denominator_.dim()) quotient_basis_.push_column(stacked.column(j));
      }
      return 0;
    });
  }

  std::size_t ambient_dim() const noexcept { return numerator_.ambient_dim(); }
  std::size_t dim() const noexcept { return quotient_basis_.cols(); }
  Prime prime() const noexcept { return numerator_.prime(); }
  const SubspaceRep& numerator() const noexcept { return numerator_; }
  const SubspaceRep& denominator() const noexcept { return denominator_; }

  /// Representatives of a basis of the quotient, one column each.
  const Matrix& quotient_basis() const noexcept { return quotient_basis_; }

 private:
  SubspaceRep numerator_;
  SubspaceRep denominator_;
  Matrix quotient_basis_;
};

/// Expresses vectors of a subquotient's numerator in its quotient basis.
class QuotientCoordinates {
 public:
  explicit QuotientCoordinates(const SubquotientRep& sq)
      : den_dim_(sq.denominator().dim()),
        dim_(sq.dim()),
        system_(hcat(sq.denominator().basis(), sq.quotient_basis())) {}

  /// Coordinates of the class of v, or nullopt if v is outside the numerator.
  std::optional<SparseVector> operator()(const SparseVector& v) const {
    auto x = detail::with_echelon(system_, [&](const auto& e) { return e.solve(v); });
    if (!x) return std::nullopt;
    SparseVector out;
    for (const Entry& en : *x) {
      if (en.row >= den_dim_) out.push_back({static_cast<std::uint32_t>(en.row - den_dim_), en.value});
    }
    return out;
  }

  /// Coordinates for every column of `vs`; throws NotWellDefined on failure.
  Matrix columns(const Matrix& vs, const char* what) const {
    Matrix out(dim_, 0, system_.prime());
    detail::with_echelon(system_, [&](const auto& e) {
      for (std::size_t j = 0; j < vs.cols(); ++j) {
        auto x = e.solve(vs.column(j));
        if (!x) throw NotWellDefined(std::string(what) + ": vector outside the target numerator");
        SparseVector c;
        for (const Entry& en : *x) {
          if (en.row >= den_dim_) c.push_back({static_cast<std::uint32_t>(en.row - den_dim_), en.value});
        }
        out.push_column(std::move(c));
      }
      return 0;
    });
    return out;
  }

 private:
  std::size_t den_dim_;
  std::size_t dim_;
  Matrix system_;
};

/// Matrix of the map src -> dst induced by f, in the quotient bases.
/// Throws NotWellDefined if f does not carry numerator into numerator and
/// denominator into denominator.
inline Matrix induced_map(const Matrix& f, const SubquotientRep& src, const SubquotientRep& dst) {
  if (f.cols() != src.ambient_dim() || f.rows() != dst.ambient_dim()) {
    throw std::invalid_argument("induced_map: shape mismatch");
  }
  Matrix den_image = f * src.denominator().basis();
  if (!dst.denominator().contains(SubspaceRep::span(den_image))) {
    throw NotWellDefined("induced_map: denominator not carried into denominator");
  }
  QuotientCoordinates coords(dst);
  return coords.columns(f * src.quotient_basis(), "induced_map");
}

}  // namespace specseq
