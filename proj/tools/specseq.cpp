// specseq: barcodes, spectral sequence pages and identity checks for
// filtered simplicial complexes.
//
//   specseq compute --input tri.flt --pages 1..4 --format json --out out/
//   specseq verify  --random 200 --vertices 8 --max-dim 3 --seed 7 --jobs 4
//   specseq barcode --input tri.flt --format svg --out tri.svg
//   specseq random  --random 10 --seed 3 --out corpus/
//
// Exit status: 0 success, 1 identity failure, 2 input error.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "specseq/specseq.hpp"
#include "specseq/io.hpp"
#include "specseq/svg.hpp"

namespace fs = std::filesystem;
using namespace specseq;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  int random_count = 0;
  int vertices = 8;
  int max_dim = 3;
  double density = 0.5;
  std::uint64_t seed = 0;
  int max_index = 10;
  std::uint32_t p = 2;
  std::string pages;
  std::string format = "json";
  std::string out;
  int jobs = 0;
  std::string corrupt;
  std::string report;
  std::string provenance = "couple";
};

struct NamedComplex {
  std::string label;
  FilteredComplex complex;
};

struct PageRange {
  int first = 1;
  int last = 0;  // 0: N + 1
};

PageRange parse_page_range(const std::string& text) {
  PageRange range;
  if (text.empty()) return range;
  auto to_int = [&](std::string_view part) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw InputError("bad page range `" + text + "`; expected a..b or a");
    }
    return v;
  };
  std::string_view sv(text);
  auto dots = sv.find("..");
  if (dots == std::string_view::npos) {
    range.first = range.last = to_int(sv);
  } else {
    range.first = to_int(sv.substr(0, dots));
    std::string_view tail = sv.substr(dots + 2);
    if (!tail.empty() && tail.front() == '=') tail.remove_prefix(1);
    range.last = to_int(tail);
  }
  if (range.first < 1 || range.last < range.first) throw InputError("page range `" + text + "` must satisfy 1 <= a <= b");
  return range;
}

// Resolves the range against one complex. Explicit files must fit in
// [1, N + 1]; random corpora clamp the upper end to each complex's N + 1.
std::pair<int, int> resolve_pages(const PageRange& range, const FilteredComplex& fc, bool clamp) {
  int top = fc.N() + 1;
  int last = range.last == 0 ? top : range.last;
  if (last > top) {
    if (!clamp) throw InputError("page range ends at " + std::to_string(last) + " but N + 1 = " + std::to_string(top));
    last = top;
  }
  return {std::min(range.first, last), last};
}

Prime make_prime(std::uint32_t p) {
  try {
    return Prime(p);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::vector<NamedComplex> load_inputs(const RunConfig& cfg) {
  bool has_file = !cfg.input.empty();
  bool has_random = cfg.random_count > 0;
  if (has_file == has_random) throw InputError("give exactly one of --input FILE or --random K");
  std::vector<NamedComplex> out;
  if (has_file) {
    std::ifstream in(cfg.input);
    if (!in) throw InputError("cannot open `" + cfg.input + "`");
    try {
      out.push_back({fs::path(cfg.input).stem().string(), parse_flt(in)});
    } catch (const ParseError& e) {
      throw InputError(cfg.input + ": " + e.what());
    }
    return out;
  }
  if (cfg.vertices < 1 || cfg.max_dim < 0 || cfg.density < 0.0 || cfg.density > 1.0 || cfg.max_index < 1) {
    throw InputError("invalid random complex parameters");
  }
  for (int k = 0; k < cfg.random_count; ++k) {
    RandomFiltrationParams params;
    params.n_vertices = cfg.vertices;
    params.max_dim = cfg.max_dim;
    params.density = cfg.density;
    params.seed = cfg.seed + static_cast<std::uint64_t>(k);
    params.max_index = cfg.max_index;
    char label[64];
    std::snprintf(label, sizeof label, "random-%04d", k);
    out.push_back({label, random_filtration(params)});
  }
  return out;
}

int worker_count(int requested, std::size_t tasks) {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int jobs = requested > 0 ? requested : hw;
  return std::max(1, std::min<int>(jobs, static_cast<int>(tasks)));
}

// Runs fn(k) for k < count on `jobs` threads; results are stored by index.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<Provenance> parse_provenances(const std::string& text) {
  if (text == "all") return {Provenance::formula, Provenance::couple, Provenance::chain_oracle};
  std::vector<Provenance> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(provenance_from_string(part));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (out.empty()) throw InputError("no provenance given");
  return out;
}

PageTable pages_for(Provenance which, const FilteredComplex& fc, const BettiTable& bt, int first, int last, Prime p) {
  switch (which) {
    case Provenance::formula: return formula_pages(bt, first, last);
    case Provenance::couple: return couple_pages(fc, first, last, p);
    case Provenance::chain_oracle: return chain_pages(fc, first, last, p);
  }
  throw std::logic_error("unreachable");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void check_format(const std::string& format) {
  if (format != "json" && format != "csv" && format != "svg") {
    throw InputError("unknown format `" + format + "`; use json, csv or svg");
  }
}

int cmd_compute(const RunConfig& cfg) {
  check_format(cfg.format);
  Prime p = make_prime(cfg.p);
  PageRange range = parse_page_range(cfg.pages);
  auto provenances = parse_provenances(cfg.provenance);
  auto inputs = load_inputs(cfg);
  fs::path root = cfg.out.empty() ? fs::path("specseq-out") : fs::path(cfg.out);
  bool many = inputs.size() > 1;

  // Validate every range before writing anything.
  std::vector<std::pair<int, int>> ranges;
  for (const auto& in : inputs) ranges.push_back(resolve_pages(range, in.complex, cfg.random_count > 0));

  parallel_for(inputs.size(), worker_count(cfg.jobs, inputs.size()), [&](std::size_t k) {
    const FilteredComplex& fc = inputs[k].complex;
    fs::path dir = many ? root / inputs[k].label : root;
    auto [first, last] = ranges[k];
    Barcode bc = reduce(fc, p);
    BettiTable bt = betti_table(bc);
    PageGrid grid = page_grid(fc);

    if (cfg.format == "json") {
      write_file_atomic(dir / "barcode.json", dump(barcode_json(bc)));
      write_file_atomic(dir / "betti.json", dump(betti_json(bt, p)));
    } else if (cfg.format == "csv") {
      write_file_atomic(dir / "barcode.csv", barcode_csv(bc));
      write_file_atomic(dir / "betti.csv", betti_csv(bt));
    } else {
      write_file_atomic(dir / "barcode.svg", barcode_svg(bc));
    }
    for (Provenance which : provenances) {
      PageTable pt = pages_for(which, fc, bt, first, last, p);
      std::string tag(to_string(which));
      if (cfg.format == "csv") {
        write_file_atomic(dir / ("pages-" + tag + ".csv"), pages_csv(pt, first, last, grid));
        continue;
      }
      for (int r = first; r <= last; ++r) {
        std::string stem = "page-" + tag + "-r" + std::to_string(r);
        if (cfg.format == "json") write_file_atomic(dir / (stem + ".json"), dump(page_json(pt, r, grid)));
        else write_file_atomic(dir / (stem + ".svg"), page_svg(pt, r, grid.max_n, grid.N));
      }
    }
  });
  std::cout << "wrote " << inputs.size() << (many ? " complexes" : " complex") << " to " << root.string() << "\n";
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  Prime p = make_prime(cfg.p);
  PageRange range = parse_page_range(cfg.pages);
  if (!cfg.corrupt.empty() && cfg.corrupt != "p-block") throw InputError("unknown fault `" + cfg.corrupt + "`");
  auto inputs = load_inputs(cfg);
  std::vector<std::pair<int, int>> ranges;
  for (const auto& in : inputs) ranges.push_back(resolve_pages(range, in.complex, cfg.random_count > 0));

  std::vector<ComplexVerification> results(inputs.size());
  parallel_for(inputs.size(), worker_count(cfg.jobs, inputs.size()), [&](std::size_t k) {
    VerifyOptions opts;
    opts.p = p;
    opts.r_first = ranges[k].first;
    opts.r_last = ranges[k].second;
    opts.corrupt_p_block = cfg.corrupt == "p-block";
    results[k] = verify_complex(inputs[k].complex, opts, inputs[k].label);
  });

  Json report = verification_json(results, p);
  if (!cfg.report.empty()) write_file_atomic(cfg.report, dump(report));

  for (auto name : kFamilies) {
    const auto& fam = report["families"][std::string(name)];
    std::cout << (fam["passed"].get<bool>() ? "PASS " : "FAIL ") << name << ": " << fam["checked"].get<std::size_t>()
              << " checks, " << fam["failed"].get<std::size_t>() << " failed\n";
  }
  std::cout << report["complexes_passed"].get<std::size_t>() << "/" << results.size() << " complexes passed\n";
  if (report["passed"].get<bool>()) return kExitPass;

  const auto& m = report["minimal_failure"];
  std::cout << "minimal failure: " << m["identity"].get<std::string>() << " at (r,n,s)=(" << m["r"].get<int>() << ','
            << m["n"].get<int>() << ',' << m["s"].get<int>() << ")";
  if (m.contains("t")) std::cout << " t=" << m["t"].get<int>();
  std::cout << " in " << m["complex"].get<std::string>() << ": expected " << m["expected"].get<long>() << ", got "
            << m["actual"].get<long>() << "\n";
  return kExitIdentityFailure;
}

int cmd_barcode(const RunConfig& cfg) {
  check_format(cfg.format);
  Prime p = make_prime(cfg.p);
  auto inputs = load_inputs(cfg);
  if (inputs.size() != 1) throw InputError("barcode takes a single complex; use --random 1");
  Barcode bc = reduce(inputs.front().complex, p);
  std::string text = cfg.format == "json" ? dump(barcode_json(bc)) : cfg.format == "csv" ? barcode_csv(bc) : barcode_svg(bc);
  if (cfg.out.empty()) std::cout << text;
  else write_file_atomic(cfg.out, text);
  return kExitPass;
}

int cmd_random(const RunConfig& cfg) {
  if (!cfg.input.empty()) throw InputError("random does not read --input");
  RunConfig gen = cfg;
  if (gen.random_count == 0) gen.random_count = 1;
  auto inputs = load_inputs(gen);
  if (cfg.out.empty()) {
    for (const auto& in : inputs) {
      std::cout << "# " << in.label << "\n" << serialize_flt(in.complex);
    }
    return kExitPass;
  }
  for (const auto& in : inputs) write_file_atomic(fs::path(cfg.out) / (in.label + ".flt"), serialize_flt(in.complex));
  std::cout << "wrote " << inputs.size() << " complexes to " << cfg.out << "\n";
  return kExitPass;
}

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input,-i", cfg.input, "filtered complex in .flt format");
  cmd->add_option("--random", cfg.random_count, "generate K random complexes")->envname("SPECSEQ_RANDOM");
  cmd->add_option("--vertices", cfg.vertices, "vertices per random complex")->envname("SPECSEQ_VERTICES");
  cmd->add_option("--max-dim", cfg.max_dim, "top simplex dimension of random complexes")->envname("SPECSEQ_MAX_DIM");
  cmd->add_option("--density", cfg.density, "probability of keeping a higher simplex")->envname("SPECSEQ_DENSITY");
  cmd->add_option("--max-index", cfg.max_index, "largest filtration index of random complexes")
      ->envname("SPECSEQ_MAX_INDEX");
  cmd->add_option("--seed", cfg.seed, "seed of the first random complex; complex k uses seed + k")
      ->envname("SPECSEQ_SEED");
  cmd->add_option("--p", cfg.p, "prime field characteristic")->envname("SPECSEQ_P");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology and spectral sequences of filtered simplicial complexes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* compute = app.add_subcommand("compute", "write barcode, Betti table and pages");
  add_input_options(compute, cfg);
  compute->add_option("--pages", cfg.pages, "page range a..b (default 1..N+1)")->envname("SPECSEQ_PAGES");
  compute->add_option("--format", cfg.format, "json, csv or svg")->envname("SPECSEQ_FORMAT");
  compute->add_option("--out,-o", cfg.out, "output directory")->envname("SPECSEQ_OUT");
  compute->add_option("--provenance", cfg.provenance, "formula, couple, chain-oracle (comma separated) or all")
      ->envname("SPECSEQ_PROVENANCE");
  compute->add_option("--jobs,-j", cfg.jobs, "worker threads (default: all cores)")->envname("SPECSEQ_JOBS");

  auto* verify = app.add_subcommand("verify", "run the identity suite");
  add_input_options(verify, cfg);
  verify->add_option("--pages", cfg.pages, "page range a..b (default 1..N+1)")->envname("SPECSEQ_PAGES");
  verify->add_option("--jobs,-j", cfg.jobs, "worker threads (default: all cores)")->envname("SPECSEQ_JOBS");
  verify->add_option("--report", cfg.report, "write the JSON report here")->envname("SPECSEQ_REPORT");
  verify->add_option("--corrupt", cfg.corrupt, "inject a fault: p-block");

  auto* barcode = app.add_subcommand("barcode", "print or write the barcode");
  add_input_options(barcode, cfg);
  barcode->add_option("--format", cfg.format, "json, csv or svg")->envname("SPECSEQ_FORMAT");
  barcode->add_option("--out,-o", cfg.out, "output file (default: stdout)");

  auto* random = app.add_subcommand("random", "generate random filtered complexes as .flt");
  add_input_options(random, cfg);
  random->add_option("--out,-o", cfg.out, "output directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*compute) return cmd_compute(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*barcode) return cmd_barcode(cfg);
    return cmd_random(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitIdentityFailure;
  }
}
