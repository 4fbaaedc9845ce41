#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "specseq/complex.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(SPECSEQ_TEST_DATA) + "/" + name; }

inline specseq::FilteredComplex load(const std::string& name) {
  std::ifstream in(path(name));
  return specseq::parse_flt(in);
}

inline specseq::FilteredComplex pt() { return load("pt.flt"); }
inline specseq::FilteredComplex seg() { return load("seg.flt"); }
inline specseq::FilteredComplex tri() { return load("tri.flt"); }

inline specseq::FilteredComplex random_complex(std::uint64_t seed, std::size_t vertices = 7, int max_dim = 3) {
  specseq::RandomFiltrationParams params;
  params.n_vertices = vertices;
  params.max_dim = max_dim;
  params.seed = seed;
  return specseq::random_filtration(params);
}

}  // namespace fixtures
