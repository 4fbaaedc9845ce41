#include <gtest/gtest.h>

#include <random>

#include "specseq/linalg.hpp"

using namespace specseq;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, Prime p, std::mt19937_64& rng, int zero_bias = 2) {
  Matrix m(rows, cols, p);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (rng() % static_cast<unsigned>(zero_bias + 1) == 0) m.set(i, j, static_cast<std::int64_t>(rng() % p.value()));
    }
  }
  return m;
}

// ∂_1 of the 3-cycle with edges 01, 02, 12.
Matrix triangle_d1(Prime p) { return Matrix::from_rows({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}}, p); }

}  // namespace

TEST(Matrix, FromRowsAndAccess) {
  Prime p(5);
  Matrix m = Matrix::from_rows({{1, 0, 7}, {0, -1, 0}}, p);
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.at(0, 2).value(), 2u);
  EXPECT_EQ(m.at(1, 1).value(), 4u);
  EXPECT_EQ(m.nonzeros(), 3u);
  m.set(0, 0, 5);  // stored zeros are dropped
  EXPECT_EQ(m.nonzeros(), 2u);
}

TEST(Matrix, ProductAndTranspose) {
  Prime p(7);
  Matrix a = Matrix::from_rows({{1, 2}, {3, 4}}, p);
  Matrix b = Matrix::from_rows({{0, 1}, {1, 0}}, p);
  EXPECT_EQ(a * b, Matrix::from_rows({{2, 1}, {4, 3}}, p));
  EXPECT_EQ(a.transpose(), Matrix::from_rows({{1, 3}, {2, 4}}, p));
  EXPECT_EQ(a * Matrix::identity(2, p), a);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix(3, 3, Prime(2))), 0u);
  for (std::size_t n : {1u, 4u, 9u}) EXPECT_EQ(rank(Matrix::identity(n, Prime(3))), n);
  EXPECT_EQ(rank(Matrix::from_rows({{1, 1}, {1, 1}}, Prime(2))), 1u);
  EXPECT_EQ(rank(triangle_d1(Prime(2))), 2u);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(Matrix::identity(4, Prime(2))).dim(), 0u);
  EXPECT_EQ(kernel_basis(Matrix(2, 3, Prime(2))).dim(), 3u);
  SubspaceRep k = kernel_basis(triangle_d1(Prime(2)));
  ASSERT_EQ(k.dim(), 1u);
  // The only nonzero cycle over GF(2) is the sum of all three edges.
  EXPECT_EQ(k.basis(), Matrix::from_rows({{1}, {1}, {1}}, Prime(2)));
}

TEST(Kernel, OddCharacteristicCycleHasSigns) {
  SubspaceRep k = kernel_basis(triangle_d1(Prime(3)));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_TRUE(triangle_d1(Prime(3)).apply(k.basis().column(0)).empty());
  EXPECT_EQ(k.basis(), Matrix::from_rows({{1}, {-1}, {1}}, Prime(3)));
}

TEST(Image, Examples) {
  EXPECT_EQ(image_basis(Matrix::identity(3, Prime(2))).dim(), 3u);
  EXPECT_EQ(image_basis(Matrix(3, 2, Prime(2))).dim(), 0u);
  SubspaceRep im = image_basis(triangle_d1(Prime(2)));
  EXPECT_EQ(im.dim(), 2u);
  // Pivot columns are the first two edges.
  EXPECT_EQ(im.basis(), Matrix::from_rows({{1, 1}, {1, 0}, {0, 1}}, Prime(2)));
}

TEST(Solve, FindsPreimagesAndRejectsOutsiders) {
  Prime p(5);
  Matrix a = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}}, p);
  Matrix b = Matrix::from_rows({{2}, {3}, {0}}, p);
  auto x = solve(a, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a * *x, b);
  EXPECT_FALSE(solve(a, Matrix::from_rows({{1}, {0}, {0}}, p)).has_value());
}

TEST(Intersect, Examples) {
  Prime p(2);
  SubspaceRep a = SubspaceRep::span(Matrix::from_rows({{1, 0}, {1, 1}}, p));
  EXPECT_EQ(intersect(a, a).dim(), a.dim());
  SubspaceRep e1 = SubspaceRep::coordinate_prefix(2, 1, p);
  SubspaceRep e2 = SubspaceRep::span(Matrix::from_rows({{0}, {1}}, p));
  EXPECT_EQ(intersect(e1, e2).dim(), 0u);
  SubspaceRep mixed = SubspaceRep::span(Matrix::from_rows({{1, 0}, {1, 1}}, p));  // span{e1+e2, e2}
  SubspaceRep cap = intersect(mixed, e1);
  ASSERT_EQ(cap.dim(), 1u);
  EXPECT_TRUE(cap.contains(e1));
  EXPECT_THROW(intersect(e1, SubspaceRep::whole(3, p)), std::invalid_argument);
}

TEST(Subquotient, DimensionAndValidation) {
  Prime p(3);
  SubspaceRep whole = SubspaceRep::whole(3, p);
  SubspaceRep line = SubspaceRep::coordinate_prefix(3, 1, p);
  EXPECT_EQ(SubquotientRep(whole, line).dim(), 2u);
  EXPECT_EQ(SubquotientRep(line, line).dim(), 0u);
  EXPECT_THROW(SubquotientRep(line, whole), std::invalid_argument);
}

TEST(InducedMap, Examples) {
  Prime p(5);
  SubquotientRep sq(SubspaceRep::whole(3, p), SubspaceRep::coordinate_prefix(3, 1, p));
  EXPECT_EQ(induced_map(Matrix::identity(3, p), sq, sq), Matrix::identity(2, p));
  EXPECT_TRUE(induced_map(Matrix(3, 3, p), sq, sq).is_zero());
}

TEST(InducedMap, SwapOnQuotientByFirstAxis) {
  // In k^2 / span{e1} the representative e2 is sent by the swap to e1,
  // whose class is zero. The swap does not preserve span{e1}, so as a map
  // of subquotients it is not well defined.
  Prime p(2);
  SubquotientRep q(SubspaceRep::whole(2, p), SubspaceRep::coordinate_prefix(2, 1, p));
  Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}}, p);
  Matrix image = swap * q.quotient_basis();
  EXPECT_TRUE(QuotientCoordinates(q).columns(image, "swap").is_zero());
  EXPECT_THROW(induced_map(swap, q, q), NotWellDefined);
}

TEST(InducedMap, DetectsMapsLeavingTheNumerator) {
  Prime p(2);
  SubquotientRep line(SubspaceRep::coordinate_prefix(2, 1, p), SubspaceRep(2, p));
  Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}}, p);
  EXPECT_THROW(induced_map(swap, line, line), NotWellDefined);
}

class LinalgProperties : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(LinalgProperties, RankOfTransposeAndRankNullity) {
  Prime p(GetParam());
  std::mt19937_64 rng(11 * GetParam());
  for (int trial = 0; trial < 60; ++trial) {
    Matrix m = random_matrix(1 + rng() % 9, 1 + rng() % 9, p, rng);
    EXPECT_EQ(rank(m), rank(m.transpose()));
    SubspaceRep k = kernel_basis(m);
    EXPECT_EQ(k.dim() + rank(m), m.cols());
    EXPECT_TRUE((m * k.basis()).is_zero());
  }
}

TEST_P(LinalgProperties, SumIntersectionDimensionFormula) {
  Prime p(GetParam());
  std::mt19937_64 rng(13 * GetParam());
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 7;
    SubspaceRep a = SubspaceRep::span(random_matrix(n, rng() % 5, p, rng));
    SubspaceRep b = SubspaceRep::span(random_matrix(n, rng() % 5, p, rng));
    SubspaceRep cap = intersect(a, b);
    EXPECT_EQ(cap.dim() + sum(a, b).dim(), a.dim() + b.dim());
    EXPECT_TRUE(a.contains(cap));
    EXPECT_TRUE(b.contains(cap));
  }
}

TEST_P(LinalgProperties, InducedMapCommutesWithProjection) {
  // f maps (num, den) to (f num, f den); projecting f x equals the induced
  // matrix applied to the coordinates of x.
  Prime p(GetParam());
  std::mt19937_64 rng(17 * GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng() % 6, m = 2 + rng() % 6;
    Matrix f = random_matrix(m, n, p, rng);
    Matrix num_gen = random_matrix(n, 1 + rng() % n, p, rng);
    SubspaceRep num = SubspaceRep::span(num_gen);
    SubspaceRep den = SubspaceRep::span(num_gen.column_range(0, rng() % (num_gen.cols() + 1)));
    SubquotientRep src(num, den);
    SubquotientRep dst(SubspaceRep::span(f * num.basis()), SubspaceRep::span(f * den.basis()));
    Matrix induced = induced_map(f, src, dst);
    QuotientCoordinates src_coords(src), dst_coords(dst);
    for (std::size_t j = 0; j < num.dim(); ++j) {
      const SparseVector& x = num.basis().column(j);
      auto cx = src_coords(x);
      auto cfx = dst_coords(f.apply(x));
      ASSERT_TRUE(cx && cfx);
      Matrix lhs(dst.dim(), 0, p), rhs(dst.dim(), 0, p);
      Matrix xs(src.dim(), 0, p);
      xs.push_column(*cx);
      lhs.push_column(*cfx);
      EXPECT_EQ(lhs, induced * xs);
    }
  }
}

TEST_P(LinalgProperties, DenseAndSparseEliminationAgree) {
  Prime p(GetParam());
  std::mt19937_64 rng(19 * GetParam());
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m = random_matrix(1 + rng() % 12, 1 + rng() % 12, p, rng);
    detail::Echelon<detail::DenseColumn> dense(m.rows(), m.cols(), p);
    detail::Echelon<detail::SparseColumn> sparse(m.rows(), m.cols(), p);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      EXPECT_EQ(dense.insert(m.column(j)), sparse.insert(m.column(j)));
    }
    EXPECT_EQ(dense.rank(), sparse.rank());
    EXPECT_EQ(dense.pivot_columns(), sparse.pivot_columns());
    EXPECT_EQ(dense.kernel(), sparse.kernel());
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, LinalgProperties, ::testing::Values(2u, 3u, 5u, 7u));

TEST(Linalg, WideMatricesUseTheSparsePathConsistently) {
  Prime p(3);
  std::mt19937_64 rng(5);
  Matrix m = random_matrix(40, 600, p, rng, 30);
  SubspaceRep k = kernel_basis(m);
  EXPECT_EQ(k.dim() + rank(m), 600u);
  EXPECT_TRUE((m * k.basis()).is_zero());
  EXPECT_EQ(rank(m), rank(m.transpose()));
}
