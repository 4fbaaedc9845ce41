#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "specseq/persistence.hpp"

using namespace specseq;

namespace {

Bar finite(int n, int b, int d) { return {n, b, d}; }
Bar essential(int n, int b) { return {n, b, std::nullopt}; }

}  // namespace

TEST(Reduce, Point) {
  Barcode bc = reduce(fixtures::pt());
  EXPECT_EQ(bc.bars, std::vector<Bar>{essential(0, 1)});
  EXPECT_EQ(bc.N, 1);
}

TEST(Reduce, Triangle) {
  Barcode bc = reduce(fixtures::tri());
  std::vector<Bar> expected = {finite(0, 1, 2), finite(0, 1, 2), essential(0, 1), finite(1, 2, 3)};
  EXPECT_EQ(bc.bars, expected);
  EXPECT_EQ(bc.count(0), 3u);
  EXPECT_EQ(bc.count(1), 1u);
}

TEST(Reduce, Segment) {
  std::vector<Bar> expected = {finite(0, 1, 2), essential(0, 1)};
  EXPECT_EQ(reduce(fixtures::seg()).bars, expected);
}

TEST(Reduce, ZeroLengthPairsAreDropped) {
  // The edge enters with its second vertex, so that vertex is born and
  // killed at the same index.
  FilteredComplex fc = parse_flt(std::string("0 : 1\n1 : 2\n0 1 : 2\n"));
  EXPECT_EQ(reduce(fc).bars, std::vector<Bar>{essential(0, 1)});
}

TEST(Reduce, EmptyComplex) {
  Barcode bc = reduce(FilteredComplex{});
  EXPECT_TRUE(bc.bars.empty());
  EXPECT_EQ(betti_table(bc)(0, 1, 1), 0);
}

TEST(BettiTable, TriangleValues) {
  BettiTable bt = betti_table(reduce(fixtures::tri()));
  EXPECT_EQ(bt(0, 1, 1), 3);
  EXPECT_EQ(bt(0, 1, 2), 1);
  EXPECT_EQ(bt(1, 2, 2), 1);
  EXPECT_EQ(bt(1, 2, 3), 0);
  EXPECT_EQ(betti_table(reduce(fixtures::pt()))(0, 1, 1), 1);
}

TEST(BettiTable, Clamping) {
  BettiTable bt = betti_table(reduce(fixtures::tri()));
  for (int t = 0; t <= 6; ++t) EXPECT_EQ(bt(0, 0, t), 0);
  EXPECT_EQ(bt(0, -3, 2), 0);
  EXPECT_EQ(bt(-1, 1, 2), 0);
  EXPECT_EQ(bt(0, 3, 99), bt(0, 3, 3));
  EXPECT_EQ(bt(0, 7, 9), bt(0, 3, 3));
  EXPECT_EQ(bt(5, 1, 2), 0);
  EXPECT_THROW(bt(0, 3, 2), std::out_of_range);
}

TEST(BettiOracle, Examples) {
  FilteredComplex tri = fixtures::tri();
  EXPECT_EQ(betti_oracle(tri, 0, 1, 2), 1);
  for (int t = 0; t <= 3; ++t) EXPECT_EQ(betti_oracle(tri, 1, 0, t), 0);
  EXPECT_EQ(betti_oracle(tri, 0, 1, 1), 3);
  EXPECT_EQ(betti_oracle(tri, 1, 2, 2), 1);
  EXPECT_EQ(betti_oracle(tri, 1, 3, 3), 0);
}

TEST(Multiplicities, Triangle) {
  auto mu = multiplicities(betti_table(reduce(fixtures::tri())));
  EXPECT_EQ(multiplicity(mu, 0, 1, 2), 2);
  EXPECT_EQ(multiplicity(mu, 1, 2, 3), 1);
  EXPECT_EQ(mu.size(), 2u);  // the essential H_0 class never enters μ
}

TEST(TotalBetti, Fixtures) {
  EXPECT_EQ(total_betti(fixtures::tri(), 0), 1);
  EXPECT_EQ(total_betti(fixtures::tri(), 1), 0);
  EXPECT_EQ(total_betti(truncate(fixtures::tri(), 2), 1), 1);
  EXPECT_EQ(total_betti(fixtures::pt(), 0), 1);
}

class PersistenceProperties : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(PersistenceProperties, BarcodeMatchesOracleOnFullGrid) {
  Prime p(GetParam());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    FilteredComplex fc = fixtures::random_complex(seed);
    BettiTable bt = betti_table(reduce(fc, p));
    ChainSpaces cs(fc, p);
    for (int n = 0; n <= fc.top_dim() + 1; ++n) {
      for (int s = 0; s <= fc.N() + 1; ++s) {
        for (int t = s; t <= fc.N() + 1; ++t) ASSERT_EQ(bt(n, s, t), betti_oracle(cs, n, s, t)) << n << s << t;
      }
    }
    for (int n = 0; n <= fc.top_dim(); ++n) {
      for (int s = 1; s <= fc.N(); ++s) {
        for (int t = s; t <= fc.N(); ++t) {
          EXPECT_GE(bt(n, s, t), bt(n, s - 1, t));
          if (t < fc.N()) { EXPECT_GE(bt(n, s, t), bt(n, s, t + 1)); }
        }
      }
    }
  }
}

TEST_P(PersistenceProperties, MultiplicitiesCountBars) {
  Prime p(GetParam());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    FilteredComplex fc = fixtures::random_complex(seed + 500);
    Barcode bc = reduce(fc, p);
    BettiTable bt = betti_table(bc);
    auto mu = multiplicities(bt);
    for (const auto& [key, v] : mu) EXPECT_GT(v, 0);
    for (int n = 0; n <= bt.max_degree(); ++n) {
      for (int i = 1; i <= fc.N(); ++i) {
        for (int j = i + 1; j <= fc.N() + 1; ++j) {
          long bars = std::count_if(bc.bars.begin(), bc.bars.end(),
                                    [&](const Bar& b) { return b.degree == n && b.birth == i && b.death == j; });
          EXPECT_EQ(multiplicity(mu, n, i, j), bars);
        }
        long born = std::count_if(bc.bars.begin(), bc.bars.end(),
                                  [&](const Bar& b) { return b.degree == n && b.birth == i; });
        EXPECT_EQ(born, bt(n, i, i) - bt(n, i - 1, i));
      }
      long graded = 0;
      for (int s = 1; s <= fc.N(); ++s) graded += bt(n, s, fc.N()) - bt(n, s - 1, fc.N());
      EXPECT_EQ(graded, total_betti(fc, n, p));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, PersistenceProperties, ::testing::Values(2u, 3u, 5u));

TEST(Persistence, TorsionSeparatesFields) {
  // Minimal 6-vertex triangulation of the real projective plane: H_1 is
  // Z/2, so it is visible over GF(2) and invisible over GF(3).
  std::string text;
  for (int v = 0; v < 6; ++v) text += std::to_string(v) + " : 1\n";
  const int faces[10][3] = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}};
  std::set<std::pair<int, int>> edges;
  for (const auto& f : faces) {
    edges.insert({f[0], f[1]});
    edges.insert({f[0], f[2]});
    edges.insert({f[1], f[2]});
  }
  for (auto [a, b] : edges) text += std::to_string(a) + " " + std::to_string(b) + " : 1\n";
  for (const auto& f : faces) text += std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + " : 2\n";
  FilteredComplex rp2 = parse_flt(text);
  EXPECT_EQ(total_betti(rp2, 1, Prime(2)), 1);
  EXPECT_EQ(total_betti(rp2, 2, Prime(2)), 1);
  EXPECT_EQ(total_betti(rp2, 1, Prime(3)), 0);
  EXPECT_EQ(total_betti(rp2, 2, Prime(3)), 0);
  EXPECT_EQ(betti_table(reduce(rp2, Prime(2)))(1, 2, 2), 1);
  EXPECT_EQ(betti_table(reduce(rp2, Prime(3)))(1, 2, 2), 0);
}
