#include <gtest/gtest.h>

#include <random>

#include "jordan/gf_matrix.hpp"

using namespace jordan;

namespace {

GfMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, const Prime& p, Layout layout,
                       double density = 0.5) {
    GfMatrix a(rows, cols, p, layout);
    std::bernoulli_distribution nonzero(density);
    std::uniform_int_distribution<Int> value(1, p.value() - 1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (nonzero(rng)) a.set(i, j, value(rng));
    return a;
}

}  // namespace

TEST(GfMatrix, LayoutSelection) {
    EXPECT_TRUE(GfMatrix(3, 3, Prime(2)).packed());
    EXPECT_FALSE(GfMatrix(3, 3, Prime(2), Layout::Unpacked).packed());
    EXPECT_FALSE(GfMatrix(3, 3, Prime(3)).packed());
    EXPECT_THROW(GfMatrix(3, 3, Prime(3), Layout::Packed), std::invalid_argument);
    EXPECT_THROW(GfMatrix(0, 3, Prime(2)), std::invalid_argument);
    EXPECT_THROW(GfMatrix(2, 2, Prime(65537)), std::invalid_argument);
}

TEST(GfMatrix, EntriesAreReducedModP) {
    GfMatrix a(2, 70, Prime(5));
    a.set(0, 0, 7);
    a.set(1, 69, -1);
    EXPECT_EQ(a.get(0, 0), 2);
    EXPECT_EQ(a.get(1, 69), 4);

    GfMatrix b(2, 130, Prime(2));
    b.set(1, 129, 3);
    b.set(0, 64, 2);
    EXPECT_EQ(b.get(1, 129), 1);
    EXPECT_EQ(b.get(0, 64), 0);
    b.set(1, 129, 0);
    EXPECT_TRUE(b.is_zero());
}

TEST(GfMatrix, LayoutConversionPreservesEntries) {
    std::mt19937_64 rng(5);
    const GfMatrix packed = random_matrix(rng, 9, 100, Prime(2), Layout::Packed);
    const GfMatrix plain = packed.with_layout(Layout::Unpacked);
    EXPECT_FALSE(plain.packed());
    EXPECT_EQ(packed, plain);
}

TEST(RankGfp, Examples) {
    EXPECT_EQ(rank_gfp(GfMatrix::identity(3, Prime(2))), 3U);
    EXPECT_EQ(rank_gfp(GfMatrix::identity(3, Prime(7))), 3U);
    EXPECT_EQ(rank_gfp(GfMatrix(4, 5, Prime(2))), 0U);
    EXPECT_EQ(rank_gfp(GfMatrix(4, 5, Prime(3))), 0U);
    EXPECT_EQ(rank_gfp(GfMatrix::from_rows({{1, 1}, {1, 1}}, Prime(2))), 1U);
    // Rows (1,2) and (2,1) are dependent mod 3 only.
    EXPECT_EQ(rank_gfp(GfMatrix::from_rows({{1, 2}, {2, 1}}, Prime(3))), 1U);
    EXPECT_EQ(rank_gfp(GfMatrix::from_rows({{1, 2}, {2, 1}}, Prime(5))), 2U);
}

TEST(RankGfp, DoesNotMutateInput) {
    const GfMatrix a = GfMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 1, 1}}, Prime(2));
    const GfMatrix copy = a;
    EXPECT_EQ(rank_gfp(a), 2U);
    EXPECT_EQ(a, copy);
}

TEST(RankGfp, PackedMatchesGenericOnRandomMatrices) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto rows = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
        const auto cols = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
        const double density = std::uniform_real_distribution<double>(0.02, 0.9)(rng);
        GfMatrix packed = random_matrix(rng, rows, cols, Prime(2), Layout::Packed, density);
        // Force some dependencies: copy a row into another.
        if (rows > 1) {
            for (std::size_t j = 0; j < cols; ++j) packed.set(rows - 1, j, packed.get(0, j));
        }
        ASSERT_EQ(rank_gfp(packed), rank_generic(packed)) << rows << 'x' << cols;
        ASSERT_EQ(rank_gfp(packed), rank_gfp(packed.with_layout(Layout::Unpacked)));
    }
}

TEST(RankGfp, RankIsInvariantUnderTranspose) {
    std::mt19937_64 rng(7);
    for (Int p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 40; ++trial) {
            const GfMatrix a = random_matrix(rng, 12, 17, Prime(p), Layout::Auto, 0.3);
            GfMatrix t(17, 12, Prime(p));
            for (std::size_t i = 0; i < 12; ++i)
                for (std::size_t j = 0; j < 17; ++j) t.set(j, i, a.get(i, j));
            ASSERT_EQ(rank_gfp(a), rank_gfp(t));
        }
    }
}

TEST(Multiply, PackedMatchesUnpacked) {
    std::mt19937_64 rng(11);
    const GfMatrix a = random_matrix(rng, 20, 70, Prime(2), Layout::Packed);
    const GfMatrix b = random_matrix(rng, 70, 33, Prime(2), Layout::Packed);
    EXPECT_EQ(multiply(a, b), multiply(a.with_layout(Layout::Unpacked), b.with_layout(Layout::Unpacked)));
    EXPECT_THROW(multiply(a, a), std::invalid_argument);
}

TEST(ModInverse, InvertsEveryUnit) {
    for (Int p : {2, 3, 5, 7, 97}) {
        for (Int x = 1; x < p; ++x) ASSERT_EQ(x * mod_inverse(x, p) % p, 1);
    }
}
