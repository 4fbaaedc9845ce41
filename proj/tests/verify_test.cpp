#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "specseq/verify.hpp"

using namespace specseq;

TEST(VerifyComplex, FixturesPassEveryFamily) {
  for (const auto& fc : {fixtures::pt(), fixtures::seg(), fixtures::tri()}) {
    ComplexVerification v = verify_complex(fc, VerifyOptions{});
    EXPECT_TRUE(v.ok());
    ASSERT_EQ(v.families.size(), kFamilies.size());
    for (auto name : kFamilies) EXPECT_GT(v.families.at(std::string(name)).total_checked(), 0u) << name;
    EXPECT_FALSE(v.minimal_failure().has_value());
  }
}

TEST(VerifyComplex, TriangleWitnessesTheUncorrectedRowSum) {
  ComplexVerification v = verify_complex(fixtures::tri(), VerifyOptions{});
  EXPECT_GT(v.uncorrected_mismatches, 0);
  EXPECT_TRUE(v.families.at("rowsums").ok());
}

TEST(VerifyComplex, CorruptionFailsOnlyTheExactSequences) {
  VerifyOptions opts;
  opts.corrupt_p_block = true;
  ComplexVerification v = verify_complex(fixtures::tri(), opts, "tri");
  EXPECT_FALSE(v.ok());
  EXPECT_FALSE(v.families.at("les").ok());
  for (auto name : {"pages", "rowsums", "betti", "barcode"}) EXPECT_TRUE(v.families.at(name).ok()) << name;
  auto first = v.minimal_failure();
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(std::tie(first->r, first->n, first->s), std::make_tuple(1, 0, 1));
}

TEST(VerifyComplex, PageRangeIsRespected) {
  VerifyOptions opts;
  opts.r_first = 2;
  opts.r_last = 3;
  ComplexVerification v = verify_complex(fixtures::tri(), opts);
  EXPECT_TRUE(v.ok());
  // Rows for n = 0..3, s = 0..4 on two pages.
  EXPECT_EQ(v.families.at("pages").checked.at("pages.couple"), 2u * 4u * 5u);
}

TEST(VerifyComplex, RandomComplexesInSeveralFields) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    VerifyOptions opts;
    opts.p = Prime(p);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      ComplexVerification v = verify_complex(fixtures::random_complex(seed, 8, 3), opts);
      EXPECT_TRUE(v.ok()) << "p " << p << " seed " << seed;
    }
  }
}

TEST(CheckReport, TracksCountsAndFailures) {
  CheckReport rep;
  rep.expect("a", 1, 0, 1, 2, 2);
  rep.expect("a", 2, 0, 1, 2, 3);
  rep.expect("b", 1, 1, 0, 0, 1);
  rep.expect_betti("c", 0, 1, 2, 4, 4);
  EXPECT_EQ(rep.checked.at("a"), 2u);
  EXPECT_EQ(rep.total_checked(), 4u);
  ASSERT_EQ(rep.failures.size(), 2u);
  auto first = rep.minimal_failure();
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(first->identity, "b");
}
