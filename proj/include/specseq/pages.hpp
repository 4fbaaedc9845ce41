#pragma once

// Chain-level description of the spectral sequence pages, used as an
// independent oracle:
//
//   Z^r_{n,s} = { x ∈ F_s C_n : ∂x ∈ F_{s-r} C_{n-1} }
//   E^(r)_{n,s} = Z^r_{n,s} / (Z^{r-1}_{n,s-1} + ∂ Z^{r-1}_{n+1,s+r-1})
//
// plus E^∞ and the graded pieces of H_n(X).

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "specseq/clamp.hpp"
#include "specseq/complex.hpp"
#include "specseq/linalg.hpp"
#include "specseq/page_table.hpp"
#include "specseq/persistence.hpp"

namespace specseq {

class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Memoizing evaluator of chain-level page dimensions for one complex.
/// Not thread-safe; use one instance per thread.
class ChainOracle {
 public:
  ChainOracle(const FilteredComplex& fc, Prime p) : spaces_(fc, p) {}

  const FilteredComplex& complex() const noexcept { return spaces_.complex(); }

  /// Z^r_{n,s} inside C_n(X).
  const SubspaceRep& z(int r, int n, int s) {
    const FilteredComplex& fc = complex();
    const int N = fc.N();
    // Z^r_{n,s} only depends on the clamped levels s and s - r.
    int top = clamp_index(s, N);
    int floor = clamp_index(s - r, N);
    auto key = std::tuple(n, top, floor);
    if (auto it = z_.find(key); it != z_.end()) return it->second;
    std::size_t cols = fc.prefix(n, top);
    Matrix restricted = spaces_.boundary(n).column_range(0, cols).drop_leading_rows(fc.prefix(n - 1, floor));
    SubspaceRep k = kernel_basis(restricted);
    return z_.emplace(key, SubspaceRep::from_independent(k.basis().with_rows(fc.count(n)))).first->second;
  }

  long page_dim(int r, int n, int s) {
    if (r < 1) throw std::invalid_argument("page index r must be >= 1");
    if (n < 0 || s <= 0 || n > complex().top_dim()) return 0;
    const SubspaceRep& num = z(r, n, s);
    const SubspaceRep& lower = z(r - 1, n, s - 1);
    const SubspaceRep& upper = z(r - 1, n + 1, s + r - 1);
    Matrix hit = spaces_.boundary(n + 1) * upper.basis();
    SubquotientRep e(num, sum(lower, SubspaceRep::span(hit)));
    return static_cast<long>(e.dim());
  }

 private:
  ChainSpaces spaces_;
  std::map<std::tuple<int, int, int>, SubspaceRep> z_;
};

inline long page_oracle(const FilteredComplex& fc, int r, int n, int s, Prime p = Prime{}) {
  return ChainOracle(fc, p).page_dim(r, n, s);
}

/// Chain-oracle pages r_first..r_last for 0 <= n <= top_dim + 1 and
/// 0 <= s <= N + 1. D entries are b_n^{s,s+r-1} from betti_oracle.
inline PageTable chain_pages(const FilteredComplex& fc, int r_first, int r_last, Prime p = Prime{}) {
  ChainOracle oracle(fc, p);
  ChainSpaces spaces(fc, p);
  PageTable pt(Provenance::chain_oracle);
  for (int r = r_first; r <= r_last; ++r) {
    for (int n = 0; n <= fc.top_dim() + 1; ++n) {
      for (int s = 0; s <= fc.N() + 1; ++s) {
        pt.set_e(r, n, s, oracle.page_dim(r, n, s));
        if (s >= 1) pt.set_d(r, n, s, betti_oracle(spaces, n, s, s + r - 1));
      }
    }
  }
  return pt;
}

/// dim Gr_{n,s} H_n(X) = b_n^{s,N} - b_n^{s-1,N}.
using GrTable = std::map<std::pair<int, int>, long>;  // (n, s) -> dim, zeros omitted

inline GrTable gr_table(const FilteredComplex& fc, const BettiTable& bt) {
  GrTable gr;
  const int N = fc.N();
  for (int n = 0; n <= fc.top_dim(); ++n) {
    for (int s = 1; s <= N; ++s) {
      long v = bt(n, s, N) - bt(n, s - 1, N);
      if (v != 0) gr[{n, s}] = v;
    }
  }
  return gr;
}

inline long gr_row_sum(const GrTable& gr, int n) {
  long total = 0;
  for (const auto& [key, v] : gr) {
    if (key.first == n) total += v;
  }
  return total;
}

/// Page at which (n, s) has stabilized: max(s, N - s + 1).
inline int stable_page(int s, int n_max) { return std::max(s, n_max - s + 1); }

/// E^∞_{n,s} realized as the chain-oracle page max(s, N - s + 1), checked
/// against the graded pieces of H_n(X). Slice keyed with r = 0.
inline PageTable einf_dims(const FilteredComplex& fc, const BettiTable& bt, Prime p = Prime{}) {
  ChainOracle oracle(fc, p);
  GrTable gr = gr_table(fc, bt);
  PageTable pt(Provenance::chain_oracle);
  const int N = fc.N();
  for (int n = 0; n <= fc.top_dim(); ++n) {
    for (int s = 1; s <= N; ++s) {
      long v = oracle.page_dim(stable_page(s, N), n, s);
      auto it = gr.find({n, s});
      long expect = it == gr.end() ? 0 : it->second;
      if (v != expect) {
        throw InternalConsistencyError("E^inf_{" + std::to_string(n) + "," + std::to_string(s) + "} = " +
                                       std::to_string(v) + " but Gr = " + std::to_string(expect));
      }
      pt.set_e(0, n, s, v);
    }
  }
  return pt;
}

}  // namespace specseq
