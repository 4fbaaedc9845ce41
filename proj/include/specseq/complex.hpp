#pragma once

// Finite filtered simplicial complexes ∅ = X_0 ⊂ X_1 ⊂ … ⊂ X_N = X, the .flt
// text format, and simplicial boundary matrices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "specseq/linalg.hpp"

namespace specseq {

using Vertex = std::uint32_t;

class Simplex {
 public:
  explicit Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("simplex must have at least one vertex");
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
      if (vertices_[i - 1] >= vertices_[i]) {
        throw std::invalid_argument("simplex vertices must be strictly increasing: " + to_string());
      }
    }
  }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }

  /// Face opposite vertex i.
  Simplex facet(std::size_t i) const {
    std::vector<Vertex> v = vertices_;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    return Simplex(std::move(v));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < vertices_.size(); ++i) s += (i ? " " : "") + std::to_string(vertices_[i]);
    return s;
  }

  friend auto operator<=>(const Simplex&, const Simplex&) = default;

 private:
  std::vector<Vertex> vertices_;
};

struct FilteredSimplex {
  Simplex simplex;
  int filt;
  friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable filtered complex. Simplices are held in canonical order
/// (filtration index, dimension, lexicographic vertices), which fixes the
/// row and column layout of every matrix built from the complex.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  /// Validates closure, duplicates and index range. `n_max` < 0 means the
  /// maximum filtration index present.
  FilteredComplex(std::vector<FilteredSimplex> simplices, int n_max = -1) : simplices_(std::move(simplices)) {
    std::sort(simplices_.begin(), simplices_.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
      if (a.filt != b.filt) return a.filt < b.filt;
      if (a.simplex.dim() != b.simplex.dim()) return a.simplex.dim() < b.simplex.dim();
      return a.simplex < b.simplex;
    });
    int top = 0;
    for (const auto& fs : simplices_) top = std::max(top, fs.filt);
    n_ = n_max < 0 ? top : n_max;
    if (top > n_) throw std::invalid_argument("filtration index exceeds N");
    validate();
    index();
  }

  int N() const noexcept { return n_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  bool empty() const noexcept { return simplices_.empty(); }
  const std::vector<FilteredSimplex>& simplices() const noexcept { return simplices_; }

  /// Largest simplex dimension, -1 when empty.
  int top_dim() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }

  /// Number of n-simplices (the dimension of C_n).
  std::size_t count(int n) const noexcept {
    return n < 0 || n > top_dim() ? 0 : by_dim_[static_cast<std::size_t>(n)].size();
  }

  /// n-simplices in canonical order, as indices into simplices().
  const std::vector<std::size_t>& of_dim(int n) const { return by_dim_.at(static_cast<std::size_t>(n)); }

  const FilteredSimplex& simplex(int n, std::size_t k) const { return simplices_[of_dim(n)[k]]; }

  /// Number of n-simplices with filtration index <= s, i.e. dim F_s C_n.
  /// The n-simplices with index <= s form a prefix of the canonical order.
  std::size_t prefix(int n, int s) const {
    if (n < 0 || n > top_dim()) return 0;
    const auto& ids = by_dim_[static_cast<std::size_t>(n)];
    return static_cast<std::size_t>(std::upper_bound(ids.begin(), ids.end(), s, [&](int v, std::size_t id) {
                                      return v < simplices_[id].filt;
                                    }) -
                                    ids.begin());
  }

  /// Position of a simplex within its dimension, if present.
  std::optional<std::size_t> position(const Simplex& s) const {
    auto it = lookup_.find(s);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const FilteredComplex& a, const FilteredComplex& b) {
    return a.n_ == b.n_ && a.simplices_ == b.simplices_;
  }

 private:
  void validate() const {
    std::map<Simplex, int> filt;
    for (const auto& fs : simplices_) {
      if (fs.filt < 1) {
        throw std::invalid_argument("simplex [" + fs.simplex.to_string() + "] has filtration index " +
                                    std::to_string(fs.filt) + " < 1");
      }
      if (!filt.emplace(fs.simplex, fs.filt).second) {
        throw std::invalid_argument("duplicate simplex [" + fs.simplex.to_string() + "]");
      }
    }
    for (const auto& fs : simplices_) {
      if (fs.simplex.dim() == 0) continue;
      for (std::size_t i = 0; i <= static_cast<std::size_t>(fs.simplex.dim()); ++i) {
        Simplex face = fs.simplex.facet(i);
        auto it = filt.find(face);
        if (it == filt.end()) {
          throw std::invalid_argument("closure violation: face [" + face.to_string() + "] of simplex [" +
                                      fs.simplex.to_string() + "] is missing");
        }
        if (it->second > fs.filt) {
          throw std::invalid_argument("closure violation: face [" + face.to_string() + "] enters at " +
                                      std::to_string(it->second) + " after simplex [" + fs.simplex.to_string() +
                                      "] at " + std::to_string(fs.filt));
        }
      }
    }
  }

  void index() {
    for (std::size_t id = 0; id < simplices_.size(); ++id) {
      auto d = static_cast<std::size_t>(simplices_[id].simplex.dim());
      if (by_dim_.size() <= d) by_dim_.resize(d + 1);
      lookup_.emplace(simplices_[id].simplex, by_dim_[d].size());
      by_dim_[d].push_back(id);
    }
  }

  std::vector<FilteredSimplex> simplices_;
  int n_ = 0;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::map<Simplex, std::size_t> lookup_;
};

/// Parses the .flt format: one simplex per line as `v0 v1 ... vd : s`,
/// `#` starts a comment, blank lines are ignored.
inline FilteredComplex parse_flt(std::istream& in) {
  std::vector<FilteredSimplex> simplices;
  std::map<Simplex, std::size_t> seen_at;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected `v0 ... vd : s`");
    std::istringstream lhs(line.substr(0, colon));
    std::istringstream rhs(line.substr(colon + 1));
    std::vector<Vertex> verts;
    std::string tok;
    while (lhs >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0 || v > 0xffffffffLL) throw std::invalid_argument(tok);
        verts.push_back(static_cast<Vertex>(v));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad vertex id `" + tok + "`");
      }
    }
    if (verts.empty()) throw ParseError(lineno, "simplex has no vertices");
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
      throw ParseError(lineno, "repeated vertex in simplex");
    }
    long long s = 0;
    std::string extra;
    if (!(rhs >> tok)) throw ParseError(lineno, "missing filtration index");
    try {
      std::size_t used = 0;
      s = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad filtration index `" + tok + "`");
    }
    if (rhs >> extra) throw ParseError(lineno, "trailing text after filtration index");
    if (s < 1) throw ParseError(lineno, "filtration index " + std::to_string(s) + " < 1");
    if (s > 1'000'000'000LL) throw ParseError(lineno, "filtration index too large");
    Simplex sx(std::move(verts));
    if (auto [it, fresh] = seen_at.emplace(sx, lineno); !fresh) {
      throw ParseError(lineno, "duplicate simplex [" + sx.to_string() + "] (first on line " +
                                   std::to_string(it->second) + ")");
    }
    simplices.push_back({std::move(sx), static_cast<int>(s)});
  }
  // Closure is checked here so errors carry the offending line.
  std::map<Simplex, int> filt;
  for (const auto& fs : simplices) filt.emplace(fs.simplex, fs.filt);
  for (const auto& fs : simplices) {
    for (std::size_t i = 0; fs.simplex.dim() > 0 && i <= static_cast<std::size_t>(fs.simplex.dim()); ++i) {
      Simplex face = fs.simplex.facet(i);
      auto it = filt.find(face);
      std::size_t at = seen_at.at(fs.simplex);
      if (it == filt.end()) {
        throw ParseError(at, "closure violation: face [" + face.to_string() + "] of simplex [" +
                                 fs.simplex.to_string() + "] is missing");
      }
      if (it->second > fs.filt) {
        throw ParseError(at, "closure violation: face [" + face.to_string() + "] enters at " +
                                 std::to_string(it->second) + " after simplex [" + fs.simplex.to_string() +
                                 "] at " + std::to_string(fs.filt));
      }
    }
  }
  return FilteredComplex(std::move(simplices));
}

inline FilteredComplex parse_flt(const std::string& text) {
  std::istringstream in(text);
  return parse_flt(in);
}

/// Canonical-order .flt text.
inline std::string serialize_flt(const FilteredComplex& fc) {
  std::string out;
  for (const auto& fs : fc.simplices()) out += fs.simplex.to_string() + " : " + std::to_string(fs.filt) + "\n";
  return out;
}

/// X_s as its own filtration: simplices with index <= s, N' = min(s, N).
inline FilteredComplex sublevel(const FilteredComplex& fc, int s) {
  if (s <= 0) return FilteredComplex{};
  int cut = std::min(s, fc.N());
  std::vector<FilteredSimplex> keep;
  for (const auto& fs : fc.simplices()) {
    if (fs.filt <= cut) keep.push_back(fs);
  }
  return FilteredComplex(std::move(keep), cut);
}

/// The filtration frozen at level t: X_t = X_{t+1} = …, with N' = t.
inline FilteredComplex truncate(const FilteredComplex& fc, int t) {
  if (t < 0 || t > fc.N()) {
    throw std::out_of_range("truncate: t = " + std::to_string(t) + " outside [0, " + std::to_string(fc.N()) + "]");
  }
  std::vector<FilteredSimplex> keep;
  for (const auto& fs : fc.simplices()) {
    if (fs.filt <= t) keep.push_back(fs);
  }
  return FilteredComplex(std::move(keep), t);
}

struct RandomFiltrationParams {
  std::size_t n_vertices = 5;
  int max_dim = 2;
  double density = 0.5;
  std::uint64_t seed = 0;
  int max_index = 10;
};

/// Seeded random filtered complex. Every vertex is present; a higher simplex
/// is kept with probability `density` when all its facets are present. Its
/// index is the max of its facets' indices plus a jitter in {0, 1, 2}, and
/// the distinct indices are then compressed monotonically onto 1..N with
/// N <= max_index, which preserves closure.
inline FilteredComplex random_filtration(const RandomFiltrationParams& params) {
  if (params.n_vertices < 1) throw std::invalid_argument("random_filtration: need at least one vertex");
  std::mt19937_64 rng(params.seed);
  auto below = [&](std::uint64_t k) { return rng() % k; };
  auto coin = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < params.density; };

  std::map<Simplex, int> raw;
  std::vector<std::vector<Simplex>> layers(1);
  for (Vertex v = 0; v < params.n_vertices; ++v) {
    Simplex s({v});
    raw.emplace(s, 1 + static_cast<int>(below(3)));
    layers[0].push_back(s);
  }
  for (int d = 1; d <= params.max_dim; ++d) {
    layers.emplace_back();
    for (const Simplex& base : layers[static_cast<std::size_t>(d - 1)]) {
      // Extend by a vertex larger than all current ones so each candidate
      // is generated once.
      for (Vertex v = base.vertices().back() + 1; v < params.n_vertices; ++v) {
        std::vector<Vertex> vs = base.vertices();
        vs.push_back(v);
        Simplex cand(std::move(vs));
        int face_max = 0;
        bool closed = true;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
          auto it = raw.find(cand.facet(i));
          if (it == raw.end()) {
            closed = false;
            break;
          }
          face_max = std::max(face_max, it->second);
        }
        if (!closed || !coin()) continue;
        raw.emplace(cand, face_max + static_cast<int>(below(3)));
        layers[static_cast<std::size_t>(d)].push_back(cand);
      }
    }
  }

  std::set<int> distinct;
  for (const auto& [s, f] : raw) distinct.insert(f);
  std::map<int, int> rank;
  int k = 0;
  for (int f : distinct) rank[f] = ++k;
  int count = k;
  int cap = std::max(1, params.max_index);
  std::vector<FilteredSimplex> out;
  for (const auto& [s, f] : raw) {
    int r = rank[f];
    int idx = count <= cap ? r : (r - 1) * cap / count + 1;
    out.push_back({s, idx});
  }
  return FilteredComplex(std::move(out));
}

/// ∂_n : C_n -> C_{n-1} with ∂[v_0…v_n] = Σ (-1)^i [v_0…v̂_i…v_n]. Rows and
/// columns follow the canonical order of (n-1)- and n-simplices.
struct ChainBoundary {
  int degree;
  Matrix matrix;
};

inline Matrix boundary_matrix(const FilteredComplex& fc, int n, Prime p) {
  if (n < 0 || n > fc.top_dim()) return Matrix(fc.count(n - 1), fc.count(n), p);
  Matrix m(fc.count(n - 1), 0, p);
  for (std::size_t k = 0; k < fc.count(n); ++k) {
    SparseVector col;
    if (n > 0) {
      const Simplex& s = fc.simplex(n, k).simplex;
      for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
        auto row = fc.position(s.facet(i));
        col.push_back({static_cast<std::uint32_t>(*row), i % 2 == 0 ? 1u : p.neg(1)});
      }
      std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    }
    m.push_column(std::move(col));
  }
  return m;
}

inline std::vector<ChainBoundary> boundary_matrices(const FilteredComplex& fc, Prime p = Prime{}) {
  std::vector<ChainBoundary> out;
  for (int n = 0; n <= fc.top_dim(); ++n) out.push_back({n, boundary_matrix(fc, n, p)});
  return out;
}

}  // namespace specseq
