#pragma once

// Closed-form relations between spectral sequence pages and persistent
// Betti numbers. Everything here reads a BettiTable only; out-of-range
// indices are resolved by the table's clamping.

#include <algorithm>
#include <map>
#include <memory>
#include <tuple>
#include <utility>

#include "specseq/complex.hpp"
#include "specseq/page_table.hpp"
#include "specseq/pages.hpp"
#include "specseq/persistence.hpp"

namespace specseq {

/// γ_n^{s,t} = b_n^{s-t,s-1} - b_n^{s-t,s}: classes born by s-t that die at s.
inline long gamma(const BettiTable& bt, int n, int s, int t) { return bt(n, s - t, s - 1) - bt(n, s - t, s); }

/// ν_n^{s,t} = b_n^{s,s+t-1} - b_n^{s-1,s+t-1}: classes born at s alive at s+t-1.
inline long nu(const BettiTable& bt, int n, int s, int t) { return bt(n, s, s + t - 1) - bt(n, s - 1, s + t - 1); }

/// dim E^(r)_{n,s} = (b_n^{s,s+r-1} - b_n^{s-1,s+r-1}) + (b_{n-1}^{s-r,s-1} - b_{n-1}^{s-r,s}).
inline long thm11_dim(const BettiTable& bt, int r, int n, int s) {
  return (bt(n, s, s + r - 1) - bt(n, s - 1, s + r - 1)) + (bt(n - 1, s - r, s - 1) - bt(n - 1, s - r, s));
}

/// Formula pages r_first..r_last over 0 <= n <= max_degree + 1,
/// 0 <= s <= N + 1; D entries from dim D^(r)_{n,s} = b_n^{s,s+r-1}.
inline PageTable formula_pages(const BettiTable& bt, int r_first, int r_last) {
  PageTable pt(Provenance::formula);
  for (int r = r_first; r <= r_last; ++r) {
    for (int n = 0; n <= bt.max_degree() + 1; ++n) {
      for (int s = 0; s <= bt.N() + 1; ++s) {
        pt.set_e(r, n, s, thm11_dim(bt, r, n, s));
        if (s >= 1) pt.set_d(r, n, s, bt(n, s, s + r - 1));
      }
    }
  }
  return pt;
}

struct IdentitySides {
  long lhs = 0;
  long rhs = 0;
  bool holds() const noexcept { return lhs == rhs; }
};

namespace detail {

inline long page_row_sum(const PageTable& pt, int r, int n, int n_max) {
  long total = 0;
  for (int s = 0; s <= n_max + 1; ++s) total += pt.e(r, n, s);
  return total;
}

/// Σ_{j-i >= r} μ_n^{i,j} over 1 <= i < j <= N + 1.
inline long long_lived(const BettiTable& bt, int n, int r) {
  long total = 0;
  for (int i = 1; i <= bt.N(); ++i) {
    for (int j = i + std::max(r, 1); j <= bt.N() + 1; ++j) {
      total += (bt(n, i, j - 1) - bt(n, i, j)) - (bt(n, i - 1, j - 1) - bt(n, i - 1, j));
    }
  }
  return total;
}

}  // namespace detail

/// Σ_s dim E^(r)_{n,s} versus Σ_{j-i>=r} (μ_n^{i,j} + μ_{n-1}^{i,j}) + b_n(X).
inline IdentitySides cor12_check(const BettiTable& bt, const PageTable& pt, int r, int n) {
  IdentitySides out;
  out.lhs = detail::page_row_sum(pt, r, n, bt.N());
  out.rhs = detail::long_lived(bt, n, r) + detail::long_lived(bt, n - 1, r) + bt(n, bt.N(), bt.N());
  return out;
}

/// The uncorrected statement Σ_s dim E^(r)_{n,s} = Σ_{j-i>=r} μ_n^{i,j}.
/// Kept as a witness that the corrected form is the one that holds.
inline IdentitySides erroneous_ssthm_check(const BettiTable& bt, const PageTable& pt, int r, int n) {
  IdentitySides out;
  out.lhs = detail::page_row_sum(pt, r, n, bt.N());
  out.rhs = detail::long_lived(bt, n, r);
  return out;
}

/// dim V_0 from an exact sequence V_2 -> V_1 -> V_0 -> V_{-1} -> V_{-2}.
inline long lemma31_dim(long dim_v1, long dim_im_f2, long dim_vm1, long dim_im_fm1) {
  return (dim_v1 - dim_im_f2) + (dim_vm1 - dim_im_fm1);
}

/// b_n^{s,t} = Σ_{0<=i<=s} dim E^(max(i, t-i+1))_{n,i}(F_{<=t}).
/// `page_dim(truncated, r, n, i)` supplies page dimensions of the
/// truncated filtration; the i = 0 summand is zero and is not evaluated.
template <class PageDim>
long thm14_betti(const FilteredComplex& fc, int n, int s, int t, PageDim&& page_dim) {
  if (s < 0 || s > t || t > fc.N()) throw std::out_of_range("thm14_betti requires 0 <= s <= t <= N");
  FilteredComplex truncated = truncate(fc, t);
  long total = 0;
  for (int i = 1; i <= s; ++i) total += page_dim(truncated, std::max(i, t - i + 1), n, i);
  return total;
}

inline long thm14_betti(const FilteredComplex& fc, int n, int s, int t, Prime p = Prime{}) {
  std::unique_ptr<FilteredComplex> kept;
  std::unique_ptr<ChainOracle> oracle;
  return thm14_betti(fc, n, s, t, [&](const FilteredComplex& truncated, int r, int dn, int i) {
    if (!oracle) {
      kept = std::make_unique<FilteredComplex>(truncated);
      oracle = std::make_unique<ChainOracle>(*kept, p);
    }
    return oracle->page_dim(r, dn, i);
  });
}

/// Every b_n^{s,t} with 1 <= s <= t <= N recovered from chain-oracle pages
/// of the truncations F_{<=t}. Each truncation is built once.
inline BettiTable thm14_table(const FilteredComplex& fc, Prime p = Prime{}) {
  std::map<std::tuple<int, int, int>, long> values;
  for (int t = 1; t <= fc.N(); ++t) {
    FilteredComplex truncated = truncate(fc, t);
    ChainOracle oracle(truncated, p);
    for (int n = 0; n <= fc.top_dim(); ++n) {
      long running = 0;
      for (int s = 1; s <= t; ++s) {
        running += oracle.page_dim(std::max(s, t - s + 1), n, s);
        values[{n, s, t}] = running;
      }
    }
  }
  return BettiTable(fc.top_dim(), fc.N(), [&](int n, int s, int t) { return values.at({n, s, t}); });
}

}  // namespace specseq
