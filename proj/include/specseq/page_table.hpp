#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>

namespace specseq {

/// Which computation path produced a page.
enum class Provenance { formula, couple, chain_oracle };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::formula: return "formula";
    case Provenance::couple: return "couple";
    case Provenance::chain_oracle: return "chain-oracle";
  }
  return "?";
}

inline Provenance provenance_from_string(std::string_view s) {
  if (s == "formula") return Provenance::formula;
  if (s == "couple") return Provenance::couple;
  if (s == "chain-oracle") return Provenance::chain_oracle;
  throw std::invalid_argument("unknown provenance `" + std::string(s) + "`");
}

using PageKey = std::tuple<int, int, int>;  // (r, n, s)

/// Dimensions of E^(r)_{n,s} (and optionally of D^(r)_{n,s}) over a range
/// of pages. Absent entries are zero.
class PageTable {
 public:
  explicit PageTable(Provenance provenance) : provenance_(provenance) {}

  Provenance provenance() const noexcept { return provenance_; }

  long e(int r, int n, int s) const { return lookup(e_, r, n, s); }
  long d(int r, int n, int s) const { return lookup(d_, r, n, s); }

  void set_e(int r, int n, int s, long dim) { store(e_, r, n, s, dim); }
  void set_d(int r, int n, int s, long dim) { store(d_, r, n, s, dim); }

  const std::map<PageKey, long>& e_entries() const noexcept { return e_; }
  const std::map<PageKey, long>& d_entries() const noexcept { return d_; }

  /// Merges another slice of the same provenance.
  void merge(const PageTable& other) {
    if (other.provenance_ != provenance_) throw std::invalid_argument("merging pages of different provenance");
    for (const auto& [k, v] : other.e_) e_[k] = v;
    for (const auto& [k, v] : other.d_) d_[k] = v;
  }

 private:
  static long lookup(const std::map<PageKey, long>& m, int r, int n, int s) {
    auto it = m.find({r, n, s});
    return it == m.end() ? 0 : it->second;
  }
  static void store(std::map<PageKey, long>& m, int r, int n, int s, long dim) {
    if (dim < 0) throw std::invalid_argument("negative page dimension");
    if (dim == 0) m.erase({r, n, s});
    else m[{r, n, s}] = dim;
  }

  Provenance provenance_;
  std::map<PageKey, long> e_;
  std::map<PageKey, long> d_;
};

}  // namespace specseq
