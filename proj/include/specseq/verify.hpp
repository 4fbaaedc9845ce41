#pragma once

// The identity suite run by `specseq verify`, grouped in five families:
//
//   pages    formula, couple and chain-level page dimensions agree; E^∞
//            matches the graded pieces of H_n(X)
//   les      the couple's long exact sequences and D-dimensions
//   rowsums  Σ_s dim E^(r)_{n,s} against persistent multiplicities
//   betti    persistent Betti numbers recovered from truncated pages
//   barcode  barcode-derived Betti numbers against the subspace oracle

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <string_view>

#include "specseq/complex.hpp"
#include "specseq/couple.hpp"
#include "specseq/formulas.hpp"
#include "specseq/pages.hpp"
#include "specseq/persistence.hpp"
#include "specseq/report.hpp"

namespace specseq {

inline constexpr std::array<std::string_view, 5> kFamilies = {"pages", "les", "rowsums", "betti", "barcode"};

struct VerifyOptions {
  Prime p;
  int r_first = 1;
  int r_last = 0;  // 0: through page N + 1
  bool corrupt_p_block = false;
};

struct ComplexVerification {
  std::string label;
  int N = 0;
  int top_dim = -1;
  std::size_t simplices = 0;
  std::map<std::string, CheckReport> families;
  // Pages on which the uncorrected row-sum formula disagrees with the pages.
  long uncorrected_mismatches = 0;

  bool ok() const {
    return std::all_of(families.begin(), families.end(), [](const auto& kv) { return kv.second.ok(); });
  }

  std::optional<IdentityFailure> minimal_failure() const {
    std::optional<IdentityFailure> best;
    for (const auto& [name, rep] : families) {
      auto f = rep.minimal_failure();
      if (f && (!best || *f < *best)) best = f;
    }
    return best;
  }
};

namespace detail {

inline void check_pages(const FilteredComplex& fc, const BettiTable& bt, const PageTable& couple, int r_first,
                        int r_last, Prime p, CheckReport& rep) {
  const int N = fc.N();
  PageTable formula = formula_pages(bt, r_first, r_last);
  PageTable oracle = chain_pages(fc, r_first, r_last, p);
  for (int r = r_first; r <= r_last; ++r) {
    long euler = 0;
    for (int n = 0; n <= fc.top_dim() + 1; ++n) {
      for (int s = 0; s <= N + 1; ++s) {
        long o = oracle.e(r, n, s);
        rep.expect("pages.formula", r, n, s, o, formula.e(r, n, s));
        rep.expect("pages.couple", r, n, s, o, couple.e(r, n, s));
        rep.expect("pages.formula_split", r, n, s, nu(bt, n, s, r) + gamma(bt, n - 1, s, r), formula.e(r, n, s));
        if (s >= 1) rep.expect("pages.dim_D", r, n, s, formula.d(r, n, s), couple.d(r, n, s));
        if (s >= 1 && s <= N && r >= stable_page(s, N) && r + 1 <= r_last) {
          rep.expect("pages.stable", r, n, s, o, oracle.e(r + 1, n, s));
        }
        euler += (n % 2 == 0 ? 1 : -1) * o;
      }
    }
    // Each page is the homology of the previous one.
    if (r > r_first) {
      long previous = 0;
      for (const auto& [key, v] : oracle.e_entries()) {
        if (std::get<0>(key) == r - 1) previous += (std::get<1>(key) % 2 == 0 ? 1 : -1) * v;
      }
      rep.expect("pages.euler", r, 0, 0, previous, euler);
    }
  }

  // E^∞ is page max(s, N - s + 1); compare with Gr and with H_n(X).
  ChainOracle stable(fc, p);
  GrTable gr = gr_table(fc, bt);
  for (int n = 0; n <= fc.top_dim(); ++n) {
    for (int s = 1; s <= N; ++s) {
      auto it = gr.find({n, s});
      int r = stable_page(s, N);
      rep.expect("pages.einf", r, n, s, it == gr.end() ? 0 : it->second, stable.page_dim(r, n, s));
    }
    rep.expect("pages.graded_sum", 0, n, 0, total_betti(fc, n, p), gr_row_sum(gr, n));
  }
}

inline void check_rowsums(const FilteredComplex& fc, const BettiTable& bt, const PageTable& pages, int r_first,
                          int r_last, CheckReport& rep, long& uncorrected) {
  for (int r = r_first; r <= r_last; ++r) {
    for (int n = 0; n <= fc.top_dim() + 1; ++n) {
      IdentitySides sides = cor12_check(bt, pages, r, n);
      rep.expect("rowsums.corrected", r, n, 0, sides.rhs, sides.lhs);
      if (!erroneous_ssthm_check(bt, pages, r, n).holds()) ++uncorrected;
    }
  }
  for (const auto& [key, v] : multiplicities(bt)) {
    auto [n, i, j] = key;
    if (v < 0) rep.expect("rowsums.multiplicity_sign", 0, n, i, 0, v);
  }
}

inline void check_betti_from_pages(const FilteredComplex& fc, const BettiTable& bt, Prime p, CheckReport& rep) {
  BettiTable recovered = thm14_table(fc, p);
  for (int n = 0; n <= fc.top_dim(); ++n) {
    for (int t = 1; t <= fc.N(); ++t) {
      for (int s = 1; s <= t; ++s) rep.expect_betti("betti.from_pages", n, s, t, bt(n, s, t), recovered(n, s, t));
    }
  }
}

inline void check_barcode(const FilteredComplex& fc, const Barcode& bc, const BettiTable& bt, Prime p,
                          CheckReport& rep) {
  BettiTable oracle = betti_table_oracle(fc, p);
  const int N = fc.N();
  for (int n = 0; n <= fc.top_dim() + 1; ++n) {
    for (int s = 0; s <= N; ++s) {
      for (int t = s; t <= N; ++t) rep.expect_betti("barcode.betti", n, s, t, oracle(n, s, t), bt(n, s, t));
    }
    for (int i = 1; i <= N; ++i) {
      auto born = std::count_if(bc.bars.begin(), bc.bars.end(),
                                [&](const Bar& b) { return b.degree == n && b.birth == i; });
      rep.expect_betti("barcode.births", n, i, i, oracle(n, i, i) - oracle(n, i - 1, i), static_cast<long>(born));
    }
  }
}

}  // namespace detail

/// Runs every identity family on one complex.
inline ComplexVerification verify_complex(const FilteredComplex& fc, const VerifyOptions& opts,
                                          std::string label = {}) {
  ComplexVerification out;
  out.label = std::move(label);
  out.N = fc.N();
  out.top_dim = fc.top_dim();
  out.simplices = fc.size();
  for (auto name : kFamilies) out.families[std::string(name)];

  const Prime p = opts.p;
  const int r_last = opts.r_last > 0 ? opts.r_last : fc.N() + 1;
  const int r_first = std::max(1, opts.r_first);
  Barcode bc = reduce(fc, p);
  BettiTable bt = betti_table(bc);

  CheckReport& les = out.families["les"];
  PageTable couple(Provenance::couple);
  Couple c = initial_couple(fc, p);
  for (int r = 1; r <= r_last; ++r) {
    if (r > 1) {
      try {
        c = derive(c);
      } catch (const NotWellDefined&) {
        les.expect("les.derive", r, 0, 0, 0, 1);
        break;
      }
    }
    if (r < r_first) continue;
    if (opts.corrupt_p_block && r == r_first) {
      Couple bad = corrupt_p_block(c);
      les.merge(check_les(bad, fc, bt));
      les.merge(check_exactness(bad));
    } else {
      les.merge(check_les(c, fc, bt));
      les.merge(check_exactness(c));
    }
    couple.merge(page_dims(c));
  }

  detail::check_pages(fc, bt, couple, r_first, r_last, p, out.families["pages"]);
  detail::check_rowsums(fc, bt, couple, r_first, r_last, out.families["rowsums"], out.uncorrected_mismatches);
  detail::check_betti_from_pages(fc, bt, p, out.families["betti"]);
  detail::check_barcode(fc, bc, bt, p, out.families["barcode"]);
  return out;
}

}  // namespace specseq
