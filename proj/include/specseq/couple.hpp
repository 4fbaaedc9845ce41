#pragma once

// The exact couple of a filtration and its derived couples.
//
// Page 1 comes from the long exact sequences of the pairs (X_s, X_{s-1}):
//   D_{n,s} = H_n(X_s),  E_{n,s} = H_n(X_s, X_{s-1}),
//   i : D_{n,s} -> D_{n,s+1},  p : D_{n,s} -> E_{n,s},  ∂ : E_{n,s} -> D_{n-1,s-1}.
// Deriving replaces E by the homology of d = p∘∂ and D by Im(i), with
//   i' = i restricted,  p'(i(x)) = [p(x)],  ∂'([x]) = ∂(x).
// Component (n, s) of the derived D is Im(i_{n,s}) ⊆ D_{n,s+1}, and ∂ at
// page r has bidegree (-1, -r).
//
// Each component keeps chain representatives of its basis in C_n(X), so
// every component is also available as a subquotient of a chain group.
// Maps are stored as blocks in the components' own bases.
//
// D_{n,s} is nonzero for every s >= 1 and constant (with i the identity)
// once s >= N, so only 1 <= s <= N is stored; accessors extend the window.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "specseq/complex.hpp"
#include "specseq/formulas.hpp"
#include "specseq/linalg.hpp"
#include "specseq/page_table.hpp"
#include "specseq/persistence.hpp"
#include "specseq/report.hpp"

namespace specseq {

/// One bigraded piece: a subquotient of C_n(X) and chain representatives
/// of its basis (one column per basis vector).
struct Component {
  SubquotientRep chain;
  Matrix reps;

  std::size_t dim() const noexcept { return reps.cols(); }
};

using Bidegree = std::pair<int, int>;
using GradedKey = std::pair<int, int>;  // (n, s)

/// Nonzero components only.
class BigradedSpace {
 public:
  const Component* find(int n, int s) const {
    auto it = components_.find({n, s});
    return it == components_.end() ? nullptr : &it->second;
  }
  std::size_t dim(int n, int s) const {
    const Component* c = find(n, s);
    return c ? c->dim() : 0;
  }
  void put(int n, int s, Component c) {
    if (c.dim() > 0) components_[{n, s}] = std::move(c);
  }
  const std::map<GradedKey, Component>& components() const noexcept { return components_; }

 private:
  std::map<GradedKey, Component> components_;
};

/// Blocks keyed by source (n, s); absent blocks are zero.
struct BigradedMap {
  Bidegree bidegree{0, 0};
  std::map<GradedKey, Matrix> blocks;
};

class Couple {
 public:
  int page() const noexcept { return page_; }
  int N() const noexcept { return n_; }
  int top_dim() const noexcept { return top_; }
  Prime prime() const noexcept { return p_; }

  const BigradedSpace& D() const noexcept { return d_; }
  const BigradedSpace& E() const noexcept { return e_; }
  const BigradedMap& i_map() const noexcept { return i_; }
  const BigradedMap& p_map() const noexcept { return pm_; }
  const BigradedMap& bd_map() const noexcept { return bd_; }

  std::size_t d_dim(int n, int s) const {
    if (s <= 0 || n < 0) return 0;
    return d_.dim(n, std::min(s, n_));
  }
  std::size_t e_dim(int n, int s) const {
    if (s <= 0 || s > n_ || n < 0) return 0;
    return e_.dim(n, s);
  }

  /// i_{n,s} : D_{n,s} -> D_{n,s+1}.
  Matrix i_block(int n, int s) const {
    if (s >= n_ && s >= 1) return Matrix::identity(d_dim(n, s), p_);
    return block(i_, n, s, d_dim(n, s + 1), d_dim(n, s));
  }
  /// p_{n,s} : D_{n,s} -> E_{n,s}.
  Matrix p_block(int n, int s) const { return block(pm_, n, s, e_dim(n, s), d_dim(n, s)); }
  /// ∂_{n,s} : E_{n,s} -> D_{n-1,s-r}.
  Matrix bd_block(int n, int s) const { return block(bd_, n, s, d_dim(n - 1, s - page_), e_dim(n, s)); }
  /// d_{n,s} = p ∘ ∂ : E_{n,s} -> E_{n-1,s-r}.
  Matrix d_block(int n, int s) const { return p_block(n - 1, s - page_) * bd_block(n, s); }

 private:
  Matrix block(const BigradedMap& m, int n, int s, std::size_t rows, std::size_t cols) const {
    auto it = m.blocks.find({n, s});
    if (it == m.blocks.end()) return Matrix(rows, cols, p_);
    return it->second;
  }

  int page_ = 1;
  int n_ = 0;
  int top_ = -1;
  Prime p_;
  BigradedSpace d_, e_;
  BigradedMap i_{{0, 1}, {}}, pm_{{0, 0}, {}}, bd_{{-1, -1}, {}};

  friend Couple initial_couple(const FilteredComplex&, Prime);
  friend Couple derive(const Couple&);
  friend Couple corrupt_p_block(const Couple&);
};

namespace detail {

inline Component make_component(SubquotientRep sq) {
  Matrix reps = sq.quotient_basis();
  return Component{std::move(sq), std::move(reps)};
}

inline void put_block(BigradedMap& m, int n, int s, Matrix block) {
  if (!block.is_zero()) m.blocks[{n, s}] = std::move(block);
}

inline Matrix solve_or_throw(const Matrix& a, const Matrix& b, const char* what) {
  auto x = solve(a, b);
  if (!x) throw NotWellDefined(std::string(what) + ": no solution");
  return std::move(*x);
}

}  // namespace detail

/// Page-1 couple from the long exact sequences of the pairs (X_s, X_{s-1}).
inline Couple initial_couple(const FilteredComplex& fc, Prime p = Prime{}) {
  Couple c;
  c.page_ = 1;
  c.n_ = fc.N();
  c.top_ = fc.top_dim();
  c.p_ = p;
  ChainSpaces cs(fc, p);
  const int N = fc.N();

  std::map<GradedKey, SubquotientRep> d, e;
  for (int n = 0; n <= fc.top_dim(); ++n) {
    std::size_t ambient = fc.count(n);
    for (int s = 1; s <= N; ++s) {
      d.emplace(GradedKey{n, s}, SubquotientRep(cs.cycles(n, s), cs.boundaries(n, s)));
      // Relative cycles {x ∈ F_s C_n : ∂x ∈ F_{s-1} C_{n-1}} modulo
      // F_{s-1} C_n + ∂ F_s C_{n+1}.
      Matrix restricted =
          cs.boundary(n).column_range(0, fc.prefix(n, s)).drop_leading_rows(fc.prefix(n - 1, s - 1));
      SubspaceRep rel = SubspaceRep::from_independent(kernel_basis(restricted).basis().with_rows(ambient));
      SubspaceRep below = SubspaceRep::coordinate_prefix(ambient, fc.prefix(n, s - 1), p);
      e.emplace(GradedKey{n, s}, SubquotientRep(rel, sum(below, cs.boundaries(n, s))));
    }
  }

  for (int n = 0; n <= fc.top_dim(); ++n) {
    Matrix id = Matrix::identity(fc.count(n), p);
    for (int s = 1; s <= N; ++s) {
      const auto& dn = d.at({n, s});
      const auto& en = e.at({n, s});
      if (s < N) detail::put_block(c.i_, n, s, induced_map(id, dn, d.at({n, s + 1})));
      detail::put_block(c.pm_, n, s, induced_map(id, dn, en));
      if (n >= 1 && s >= 2) detail::put_block(c.bd_, n, s, induced_map(cs.boundary(n), en, d.at({n - 1, s - 1})));
    }
  }
  for (auto& [key, sq] : d) c.d_.put(key.first, key.second, detail::make_component(std::move(sq)));
  for (auto& [key, sq] : e) c.e_.put(key.first, key.second, detail::make_component(std::move(sq)));
  return c;
}

/// The derived couple: E' = ker d / Im d, D' = Im i, with the induced maps.
inline Couple derive(const Couple& c) {
  const int r = c.page();
  const int N = c.N();
  const Prime p = c.prime();
  Couple out;
  out.page_ = r + 1;
  out.n_ = N;
  out.top_ = c.top_dim();
  out.p_ = p;
  out.bd_.bidegree = {-1, -(r + 1)};

  // ker d / Im d at every E component, in the old E coordinates.
  std::map<GradedKey, SubquotientRep> homology;
  // Im i_{n,s} ⊆ D_{n,s+1}, in the old D_{n,s+1} coordinates.
  std::map<GradedKey, SubspaceRep> image;

  for (int n = 0; n <= c.top_dim(); ++n) {
    for (int s = 1; s <= N; ++s) {
      std::size_t de = c.e_dim(n, s);
      if (de > 0) {
        SubspaceRep kernel = kernel_basis(c.d_block(n, s));
        SubspaceRep incoming = image_basis(c.d_block(n + 1, s + r));
        SubquotientRep h(kernel, incoming);
        const Component& old = *c.E().find(n, s);
        Matrix reps = old.reps * h.quotient_basis();
        SubspaceRep den = sum(old.chain.denominator(), SubspaceRep::span(old.reps * incoming.basis()));
        SubspaceRep num = sum(den, SubspaceRep::span(reps));
        out.e_.put(n, s, Component{SubquotientRep(num, den), std::move(reps)});
        homology.emplace(GradedKey{n, s}, std::move(h));
      }
      SubspaceRep im = image_basis(c.i_block(n, s));
      if (im.dim() > 0) {
        const Component& target = *c.D().find(n, std::min(s + 1, N));
        Matrix reps = target.reps * im.basis();
        const SubspaceRep& den = target.chain.denominator();
        out.d_.put(n, s, Component{SubquotientRep(sum(den, SubspaceRep::span(reps)), den), std::move(reps)});
      }
      image.emplace(GradedKey{n, s}, std::move(im));
    }
  }

  auto image_at = [&](int n, int s) -> const SubspaceRep* {
    auto it = image.find({n, s});
    return it == image.end() || it->second.dim() == 0 ? nullptr : &it->second;
  };

  for (int n = 0; n <= c.top_dim(); ++n) {
    for (int s = 1; s <= N; ++s) {
      const SubspaceRep* src = image_at(n, s);
      // i' = i restricted to Im i.
      if (src && s < N) {
        const SubspaceRep* dst = image_at(n, s + 1);
        Matrix moved = c.i_block(n, s + 1) * src->basis();
        if (!dst) {
          if (!moved.is_zero()) throw NotWellDefined("derive: i' leaves Im i");
        } else {
          detail::put_block(out.i_, n, s, detail::solve_or_throw(dst->basis(), moved, "derive: i'"));
        }
      }
      // p'(i(x)) = [p(x)].
      auto h = homology.find({n, s});
      if (src && h != homology.end()) {
        Matrix pre = detail::solve_or_throw(c.i_block(n, s), src->basis(), "derive: preimage under i");
        Matrix classes = c.p_block(n, s) * pre;
        detail::put_block(out.pm_, n, s, QuotientCoordinates(h->second).columns(classes, "derive: p'"));
      }
      // ∂'([x]) = ∂(x) ∈ Im i_{n-1,s-r-1}.
      if (h != homology.end() && n >= 1) {
        Matrix hit = c.bd_block(n, s) * h->second.quotient_basis();
        const SubspaceRep* dst = s - r - 1 >= 1 ? image_at(n - 1, s - r - 1) : nullptr;
        if (!dst) {
          if (!hit.is_zero()) throw NotWellDefined("derive: ∂' lands outside Im i");
        } else {
          detail::put_block(out.bd_, n, s, detail::solve_or_throw(dst->basis(), hit, "derive: ∂'"));
        }
      }
    }
  }
  return out;
}

/// Page r of the couple, deriving exactly r - 1 times.
inline Couple couple_at(const FilteredComplex& fc, int r, Prime p = Prime{}) {
  if (r < 1) throw std::invalid_argument("page index r must be >= 1");
  Couple c = initial_couple(fc, p);
  for (int k = 1; k < r; ++k) c = derive(c);
  return c;
}

/// dim E^(r)_{n,s} and dim D^(r)_{n,s} for 0 <= n <= top_dim + 1,
/// 0 <= s <= N + 1.
inline PageTable page_dims(const Couple& c) {
  PageTable pt(Provenance::couple);
  for (int n = 0; n <= c.top_dim() + 1; ++n) {
    for (int s = 0; s <= c.N() + 1; ++s) {
      pt.set_e(c.page(), n, s, static_cast<long>(c.e_dim(n, s)));
      if (s >= 1) pt.set_d(c.page(), n, s, static_cast<long>(c.d_dim(n, s)));
    }
  }
  return pt;
}

/// Couple pages r_first..r_last.
inline PageTable couple_pages(const FilteredComplex& fc, int r_first, int r_last, Prime p = Prime{}) {
  PageTable pt(Provenance::couple);
  Couple c = initial_couple(fc, p);
  for (int r = 1; r <= r_last; ++r) {
    if (r > 1) c = derive(c);
    if (r >= r_first) pt.merge(page_dims(c));
  }
  return pt;
}

/// Exactness of the couple at every vertex, and d∘d = 0.
inline CheckReport check_exactness(const Couple& c) {
  CheckReport rep;
  const int r = c.page();
  for (int n = 0; n <= c.top_dim() + 1; ++n) {
    for (int s = 1; s <= c.N() + 1; ++s) {
      auto e_dim = static_cast<long>(c.e_dim(n, s));
      auto d_dim = static_cast<long>(c.d_dim(n, s));
      // At E_{n,s}: Im p = ker ∂.
      Matrix p_ns = c.p_block(n, s);
      Matrix bd_ns = c.bd_block(n, s);
      rep.expect("exact_at_E.compose", r, n, s, 0, static_cast<long>((bd_ns * p_ns).nonzeros()));
      rep.expect("exact_at_E.rank", r, n, s, e_dim, static_cast<long>(rank(p_ns) + rank(bd_ns)));
      // At D_{n,s} between i and p: Im i = ker p.
      Matrix i_in = c.i_block(n, s - 1);
      rep.expect("exact_at_D_p.compose", r, n, s, 0, static_cast<long>((p_ns * i_in).nonzeros()));
      rep.expect("exact_at_D_p.rank", r, n, s, d_dim, static_cast<long>(rank(i_in) + rank(p_ns)));
      // At D_{n,s} between ∂ and i: Im ∂ = ker i.
      Matrix bd_in = c.bd_block(n + 1, s + r);
      Matrix i_out = c.i_block(n, s);
      rep.expect("exact_at_D_i.compose", r, n, s, 0, static_cast<long>((i_out * bd_in).nonzeros()));
      rep.expect("exact_at_D_i.rank", r, n, s, d_dim, static_cast<long>(rank(bd_in) + rank(i_out)));
      // d∘d = 0.
      rep.expect("d_squared", r, n, s, 0, static_cast<long>((c.d_block(n - 1, s - r) * c.d_block(n, s)).nonzeros()));
    }
  }
  return rep;
}

/// The couple's components against persistent Betti numbers:
///   dim D^(r)_{n,s} = b_n^{s,s+r-1},  rank i^(r)_{n,s} = b_n^{s,s+r},
/// exactness of  H^{s,s+r-1}_n -> E^(r)_{n,s} -> H^{s-r,s-1}_{n-1} -> H^{s-r+1,s}_{n-1}
/// as rank identities, and dim E^(r)_{n,s} predicted from its neighbours.
inline CheckReport check_les(const Couple& c, const FilteredComplex& fc, const BettiTable& bt) {
  CheckReport rep;
  const int r = c.page();
  if (fc.N() != c.N()) throw std::invalid_argument("check_les: couple and complex disagree on N");
  for (int n = 0; n <= c.top_dim() + 1; ++n) {
    for (int s = 1; s <= c.N() + 1; ++s) {
      rep.expect("les.dim_D", r, n, s, bt(n, s, s + r - 1), static_cast<long>(c.d_dim(n, s)));
      long rank_i = static_cast<long>(rank(c.i_block(n, s)));
      rep.expect("les.image_i", r, n, s, bt(n, s, s + r), rank_i);

      Matrix p_ns = c.p_block(n, s);
      Matrix bd_ns = c.bd_block(n, s);
      long rank_p = static_cast<long>(rank(p_ns));
      long rank_bd = static_cast<long>(rank(bd_ns));
      long rank_i_prev = static_cast<long>(rank(c.i_block(n, s - 1)));
      long rank_i_low = static_cast<long>(rank(c.i_block(n - 1, s - r)));
      auto e_dim = static_cast<long>(c.e_dim(n, s));

      rep.expect("les.exact_at_H_n", r, n, s, bt(n, s, s + r - 1), rank_i_prev + rank_p);
      rep.expect("les.exact_at_E", r, n, s, e_dim, rank_p + rank_bd);
      rep.expect("les.exact_at_H_n-1", r, n, s, bt(n - 1, s - r, s - 1), rank_bd + rank_i_low);
      rep.expect("les.compose_p_i", r, n, s, 0, static_cast<long>((p_ns * c.i_block(n, s - 1)).nonzeros()));
      rep.expect("les.compose_bd_p", r, n, s, 0, static_cast<long>((bd_ns * p_ns).nonzeros()));
      rep.expect("les.compose_i_bd", r, n, s, 0, static_cast<long>((c.i_block(n - 1, s - r) * bd_ns).nonzeros()));
      rep.expect("les.predicted_dim_E", r, n, s,
                 lemma31_dim(static_cast<long>(c.d_dim(n, s)), rank_i_prev, static_cast<long>(c.d_dim(n - 1, s - r)),
                             rank_i_low),
                 e_dim);
    }
  }
  return rep;
}

/// Copy of `c` with the first nonzero p block zeroed. Used to exercise the
/// failure paths of the exactness checks.
inline Couple corrupt_p_block(const Couple& c) {
  Couple bad = c;
  if (!bad.pm_.blocks.empty()) bad.pm_.blocks.erase(bad.pm_.blocks.begin());
  return bad;
}

}  // namespace specseq
