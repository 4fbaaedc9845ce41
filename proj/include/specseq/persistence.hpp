#pragma once

// Barcodes by boundary-matrix reduction, persistent Betti numbers
// b_n^{s,t} = rank(H_n(X_s) -> H_n(X_t)), and persistent multiplicities.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "specseq/clamp.hpp"
#include "specseq/complex.hpp"
#include "specseq/linalg.hpp"

namespace specseq {

/// Interval [birth, death) in degree `degree`; no death means essential.
struct Bar {
  int degree = 0;
  int birth = 1;
  std::optional<int> death;

  bool essential() const noexcept { return !death.has_value(); }

  friend bool operator==(const Bar&, const Bar&) = default;
  friend bool operator<(const Bar& a, const Bar& b) {
    // Essential bars sort after finite ones of the same birth.
    auto key = [](const Bar& x) { return std::tuple(x.degree, x.birth, x.death.value_or(INT32_MAX)); };
    return key(a) < key(b);
  }
};

struct Barcode {
  std::vector<Bar> bars;  // sorted
  int N = 0;
  Prime p;

  std::size_t count(int degree) const {
    return static_cast<std::size_t>(
        std::count_if(bars.begin(), bars.end(), [&](const Bar& b) { return b.degree == degree; }));
  }
  int max_degree() const {
    int d = -1;
    for (const auto& b : bars) d = std::max(d, b.degree);
    return d;
  }
};

/// Standard persistence reduction of the global boundary matrix in
/// canonical filtration order. Pairs created and destroyed at the same
/// index produce no bar.
inline Barcode reduce(const FilteredComplex& fc, Prime p = Prime{}) {
  const auto& simplices = fc.simplices();
  std::size_t m = simplices.size();

  // Global position of every simplex, grouped by dimension.
  std::vector<std::vector<std::uint32_t>> global(static_cast<std::size_t>(fc.top_dim() + 1));
  for (int d = 0; d <= fc.top_dim(); ++d) {
    for (std::size_t id : fc.of_dim(d)) global[static_cast<std::size_t>(d)].push_back(static_cast<std::uint32_t>(id));
  }

  std::vector<SparseVector> columns(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Simplex& s = simplices[j].simplex;
    int d = s.dim();
    for (int i = 0; d > 0 && i <= d; ++i) {
      std::size_t pos = *fc.position(s.facet(static_cast<std::size_t>(i)));
      columns[j].push_back({global[static_cast<std::size_t>(d - 1)][pos], i % 2 == 0 ? 1u : p.neg(1)});
    }
    std::sort(columns[j].begin(), columns[j].end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  }

  std::unordered_map<std::uint32_t, std::size_t> low_owner;
  std::vector<bool> paired(m, false);
  Barcode bc;
  bc.N = fc.N();
  bc.p = p;
  for (std::size_t j = 0; j < m; ++j) {
    auto& col = columns[j];
    while (!col.empty()) {
      auto it = low_owner.find(col.back().row);
      if (it == low_owner.end()) break;
      const auto& other = columns[it->second];
      // col -= (col_low / other_low) * other
      std::uint32_t c = p.neg(p.mul(col.back().value, p.inv(other.back().value)));
      detail::SparseColumn acc(col, 0);
      acc.axpy(c, detail::SparseColumn(other, 0), p);
      col = acc.to_sparse();
    }
    if (col.empty()) continue;
    std::uint32_t low = col.back().row;
    low_owner.emplace(low, j);
    paired[low] = paired[j] = true;
    int birth = simplices[low].filt;
    int death = simplices[j].filt;
    if (birth < death) bc.bars.push_back({simplices[low].simplex.dim(), birth, death});
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!paired[j]) bc.bars.push_back({simplices[j].simplex.dim(), simplices[j].filt, std::nullopt});
  }
  std::sort(bc.bars.begin(), bc.bars.end());
  return bc;
}

/// Dense table of b_n^{s,t}, queried as a total function of (n, s, t):
/// zero for s <= 0 or n < 0 or n above the stored degrees, indices above N
/// treated as N. Querying s > t after clamping is an error.
class BettiTable {
 public:
  BettiTable() = default;

  /// Fills every 0 <= n <= max_degree, 1 <= s <= t <= N from `value(n, s, t)`.
  template <class Fn>
  BettiTable(int max_degree, int n_max, Fn&& value) : degrees_(max_degree + 1), n_(n_max) {
    data_.assign(static_cast<std::size_t>(std::max(degrees_, 0) * n_ * n_), 0);
    for (int n = 0; n < degrees_; ++n) {
      for (int s = 1; s <= n_; ++s) {
        for (int t = s; t <= n_; ++t) data_[offset(n, s, t)] = static_cast<long>(value(n, s, t));
      }
    }
  }

  int N() const noexcept { return n_; }
  int max_degree() const noexcept { return degrees_ - 1; }

  long operator()(int n, int s, int t) const {
    if (n < 0 || s <= 0) return 0;
    s = clamp_index(s, n_);
    t = clamp_index(t, n_);
    if (s > t) {
      throw std::out_of_range("betti query with s > t: b_" + std::to_string(n) + "^{" + std::to_string(s) + "," +
                              std::to_string(t) + "}");
    }
    if (n >= degrees_) return 0;
    return data_[offset(n, s, t)];
  }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  std::size_t offset(int n, int s, int t) const {
    return static_cast<std::size_t>((n * n_ + (s - 1)) * n_ + (t - 1));
  }

  int degrees_ = 0;
  int n_ = 0;
  std::vector<long> data_;
};

/// b_n^{s,t} by interval counting: bars with birth <= s alive past t.
inline BettiTable betti_table(const Barcode& bc) {
  return BettiTable(bc.max_degree(), bc.N, [&](int n, int s, int t) {
    return std::count_if(bc.bars.begin(), bc.bars.end(), [&](const Bar& b) {
      return b.degree == n && b.birth <= s && (b.essential() || *b.death > t);
    });
  });
}

/// Cycle and boundary spaces of a filtered complex, computed per level
/// directly from boundary matrices. Independent of reduce().
class ChainSpaces {
 public:
  ChainSpaces(const FilteredComplex& fc, Prime p) : fc_(fc), p_(p), empty_(0, 0, p) {
    for (int n = 0; n <= fc.top_dim() + 1; ++n) boundaries_.push_back(boundary_matrix(fc, n, p));
  }

  const FilteredComplex& complex() const noexcept { return fc_; }
  Prime prime() const noexcept { return p_; }

  /// ∂_n : C_n -> C_{n-1}. Outside 0..top_dim+1 both spaces are zero.
  const Matrix& boundary(int n) const {
    if (n < 0 || n >= static_cast<int>(boundaries_.size())) return empty_;
    return boundaries_[static_cast<std::size_t>(n)];
  }

  /// Z_n(X_s) inside C_n(X).
  SubspaceRep cycles(int n, int s) const {
    std::size_t k = fc_.prefix(n, clamp_index(s, fc_.N()));
    SubspaceRep z = kernel_basis(boundary(n).column_range(0, k));
    return SubspaceRep::from_independent(z.basis().with_rows(fc_.count(n)));
  }

  /// B_n(X_t) inside C_n(X).
  SubspaceRep boundaries(int n, int t) const {
    std::size_t k = fc_.prefix(n + 1, clamp_index(t, fc_.N()));
    return image_basis(boundary(n + 1).column_range(0, k));
  }

 private:
  const FilteredComplex& fc_;
  Prime p_;
  std::vector<Matrix> boundaries_;
  Matrix empty_;
};

/// dim Z_n(X_s) - dim(Z_n(X_s) ∩ B_n(X_t)), the rank of i_n^{s,t}.
inline long betti_oracle(const ChainSpaces& cs, int n, int s, int t) {
  if (n < 0 || s <= 0) return 0;
  const int N = cs.complex().N();
  s = clamp_index(s, N);
  t = clamp_index(t, N);
  if (s > t) throw std::out_of_range("betti_oracle: s > t");
  SubspaceRep z = cs.cycles(n, s);
  SubspaceRep b = cs.boundaries(n, t);
  return static_cast<long>(z.dim() - intersect(z, b).dim());
}

inline long betti_oracle(const FilteredComplex& fc, int n, int s, int t, Prime p = Prime{}) {
  return betti_oracle(ChainSpaces(fc, p), n, s, t);
}

/// Full BettiTable from betti_oracle, caching cycle and boundary spaces.
inline BettiTable betti_table_oracle(const FilteredComplex& fc, Prime p = Prime{}) {
  ChainSpaces cs(fc, p);
  std::map<std::pair<int, int>, SubspaceRep> z, b;
  auto get = [](auto& cache, int n, int s, auto&& make) -> const SubspaceRep& {
    auto it = cache.find({n, s});
    if (it == cache.end()) it = cache.emplace(std::pair{n, s}, make(n, s)).first;
    return it->second;
  };
  return BettiTable(fc.top_dim(), fc.N(), [&](int n, int s, int t) {
    const SubspaceRep& zs = get(z, n, s, [&](int a, int c) { return cs.cycles(a, c); });
    const SubspaceRep& bt = get(b, n, t, [&](int a, int c) { return cs.boundaries(a, c); });
    return static_cast<long>(zs.dim() - intersect(zs, bt).dim());
  });
}

/// dim H_n(X) = dim C_n - rank ∂_n - rank ∂_{n+1}, from the total space only.
inline long total_betti(const FilteredComplex& fc, int n, Prime p = Prime{}) {
  if (n < 0 || n > fc.top_dim()) return 0;
  return static_cast<long>(fc.count(n)) - static_cast<long>(rank(boundary_matrix(fc, n, p))) -
         static_cast<long>(rank(boundary_matrix(fc, n + 1, p)));
}

using MultiplicityKey = std::tuple<int, int, int>;  // (n, i, j)

/// μ_n^{i,j} = (b^{i,j-1} - b^{i,j}) - (b^{i-1,j-1} - b^{i-1,j}) for
/// 1 <= i < j <= N + 1, every stored degree. Zero entries are omitted.
inline std::map<MultiplicityKey, long> multiplicities(const BettiTable& bt) {
  std::map<MultiplicityKey, long> mu;
  for (int n = 0; n <= bt.max_degree(); ++n) {
    for (int i = 1; i <= bt.N(); ++i) {
      for (int j = i + 1; j <= bt.N() + 1; ++j) {
        long v = (bt(n, i, j - 1) - bt(n, i, j)) - (bt(n, i - 1, j - 1) - bt(n, i - 1, j));
        if (v != 0) mu[{n, i, j}] = v;
      }
    }
  }
  return mu;
}

inline long multiplicity(const std::map<MultiplicityKey, long>& mu, int n, int i, int j) {
  auto it = mu.find({n, i, j});
  return it == mu.end() ? 0 : it->second;
}

}  // namespace specseq
