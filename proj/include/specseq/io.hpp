#pragma once

// JSON and CSV encodings of barcodes, Betti tables, pages and
// verification reports. Requires the single-header nlohmann json.hpp on the include path.
//
// Every encoder emits keys in a fixed order and rows in a fixed order, so
// equal inputs give byte-identical output.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "specseq/complex.hpp"
#include "specseq/page_table.hpp"
#include "specseq/persistence.hpp"
#include "specseq/report.hpp"
#include "specseq/verify.hpp"

namespace specseq {

using Json = nlohmann::ordered_json;

// ---- barcodes

inline Json barcode_json(const Barcode& bc) {
  Json bars = Json::array();
  for (const Bar& b : bc.bars) {
    Json death = b.death ? Json(*b.death) : Json(nullptr);
    bars.push_back({{"dim", b.degree}, {"birth", b.birth}, {"death", death}});
  }
  return Json{{"p", bc.p.value()}, {"N", bc.N}, {"bars", bars}};
}

inline Barcode barcode_from_json(const Json& j) {
  Barcode bc;
  bc.p = Prime(j.at("p").get<std::uint32_t>());
  bc.N = j.at("N").get<int>();
  for (const auto& b : j.at("bars")) {
    Bar bar{b.at("dim").get<int>(), b.at("birth").get<int>(), std::nullopt};
    if (!b.at("death").is_null()) bar.death = b.at("death").get<int>();
    bc.bars.push_back(bar);
  }
  std::sort(bc.bars.begin(), bc.bars.end());
  return bc;
}

/// Columns dim,birth,death; an essential bar has an empty death field.
inline std::string barcode_csv(const Barcode& bc) {
  std::ostringstream out;
  out << "dim,birth,death\n";
  for (const Bar& b : bc.bars) {
    out << b.degree << ',' << b.birth << ',';
    if (b.death) out << *b.death;
    out << '\n';
  }
  return out.str();
}

// ---- persistent Betti numbers, 1 <= s <= t <= N

inline Json betti_json(const BettiTable& bt, Prime p) {
  Json rows = Json::array();
  for (int n = 0; n <= bt.max_degree(); ++n) {
    for (int s = 1; s <= bt.N(); ++s) {
      for (int t = s; t <= bt.N(); ++t) rows.push_back({{"n", n}, {"s", s}, {"t", t}, {"dim", bt(n, s, t)}});
    }
  }
  return Json{{"p", p.value()}, {"N", bt.N()}, {"betti", rows}};
}

inline std::string betti_csv(const BettiTable& bt) {
  std::ostringstream out;
  out << "n,s,t,dim\n";
  for (int n = 0; n <= bt.max_degree(); ++n) {
    for (int s = 1; s <= bt.N(); ++s) {
      for (int t = s; t <= bt.N(); ++t) out << n << ',' << s << ',' << t << ',' << bt(n, s, t) << '\n';
    }
  }
  return out.str();
}

// ---- pages

/// Grid written for a page: 0 <= n <= max_n, 0 <= s <= N + 1 for E and
/// 1 <= s <= N + 1 for D, zeros included.
struct PageGrid {
  int max_n = 0;
  int N = 0;
};

inline PageGrid page_grid(const FilteredComplex& fc) { return {fc.top_dim() + 1, fc.N()}; }

inline Json page_json(const PageTable& pt, int r, const PageGrid& grid) {
  Json e = Json::array(), d = Json::array();
  for (int n = 0; n <= grid.max_n; ++n) {
    for (int s = 0; s <= grid.N + 1; ++s) {
      e.push_back({{"n", n}, {"s", s}, {"dim", pt.e(r, n, s)}});
      if (s >= 1) d.push_back({{"n", n}, {"s", s}, {"dim", pt.d(r, n, s)}});
    }
  }
  return Json{{"r", r}, {"E", e}, {"D", d}, {"provenance", std::string(to_string(pt.provenance()))}};
}

inline PageTable page_from_json(const Json& j) {
  PageTable pt(provenance_from_string(j.at("provenance").get<std::string>()));
  int r = j.at("r").get<int>();
  for (const auto& x : j.at("E")) pt.set_e(r, x.at("n").get<int>(), x.at("s").get<int>(), x.at("dim").get<long>());
  for (const auto& x : j.at("D")) pt.set_d(r, x.at("n").get<int>(), x.at("s").get<int>(), x.at("dim").get<long>());
  return pt;
}

inline std::string pages_csv(const PageTable& pt, int r_first, int r_last, const PageGrid& grid) {
  std::ostringstream out;
  out << "provenance,r,n,s,E,D\n";
  for (int r = r_first; r <= r_last; ++r) {
    for (int n = 0; n <= grid.max_n; ++n) {
      for (int s = 0; s <= grid.N + 1; ++s) {
        out << to_string(pt.provenance()) << ',' << r << ',' << n << ',' << s << ',' << pt.e(r, n, s) << ',';
        if (s >= 1) out << pt.d(r, n, s);
        out << '\n';
      }
    }
  }
  return out.str();
}

// ---- verification reports

inline Json failure_json(const IdentityFailure& f) {
  Json j{{"identity", f.identity}, {"r", f.r}, {"n", f.n}, {"s", f.s}};
  if (f.t >= 0) j["t"] = f.t;
  j["expected"] = f.expected;
  j["actual"] = f.actual;
  return j;
}

inline Json check_report_json(const CheckReport& rep) {
  Json checked = Json::object();
  for (const auto& [k, v] : rep.checked) checked[k] = v;
  std::vector<IdentityFailure> sorted = rep.failures;
  std::sort(sorted.begin(), sorted.end());
  Json failures = Json::array();
  for (const auto& f : sorted) failures.push_back(failure_json(f));
  return Json{{"passed", rep.ok()}, {"checked", checked}, {"failures", failures}};
}

inline Json complex_report_json(const ComplexVerification& cv) {
  Json families = Json::object();
  for (auto name : kFamilies) families[std::string(name)] = check_report_json(cv.families.at(std::string(name)));
  return Json{{"label", cv.label},
              {"N", cv.N},
              {"top_dim", cv.top_dim},
              {"simplices", cv.simplices},
              {"passed", cv.ok()},
              {"uncorrected_rowsum_mismatches", cv.uncorrected_mismatches},
              {"families", families}};
}

inline Json verification_json(const std::vector<ComplexVerification>& runs, Prime p) {
  Json complexes = Json::array();
  Json summary = Json::object();
  std::optional<IdentityFailure> minimal;
  std::string minimal_label;
  std::size_t passed = 0;
  for (auto name : kFamilies) summary[std::string(name)] = Json{{"checked", 0}, {"failed", 0}, {"passed", true}};
  for (const auto& cv : runs) {
    complexes.push_back(complex_report_json(cv));
    if (cv.ok()) ++passed;
    for (const auto& [name, rep] : cv.families) {
      auto& s = summary[name];
      s["checked"] = s["checked"].get<std::size_t>() + rep.total_checked();
      s["failed"] = s["failed"].get<std::size_t>() + rep.failures.size();
      if (!rep.ok()) s["passed"] = false;
    }
    auto f = cv.minimal_failure();
    if (f && (!minimal || *f < *minimal)) {
      minimal = f;
      minimal_label = cv.label;
    }
  }
  Json min_json = nullptr;
  if (minimal) {
    min_json = failure_json(*minimal);
    min_json["complex"] = minimal_label;
  }
  return Json{{"p", p.value()},
              {"complexes_checked", runs.size()},
              {"complexes_passed", passed},
              {"passed", passed == runs.size()},
              {"families", summary},
              {"minimal_failure", min_json},
              {"complexes", complexes}};
}

// ---- files

/// Writes through a temporary sibling and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open `" + tmp.string() + "` for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to `" + tmp.string() + "` failed");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open `" + path.string() + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace specseq
