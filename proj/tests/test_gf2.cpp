#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mixtop/gf2.hpp"

using namespace mixtop;

namespace {

BitMatrix random_matrix(size_t r, size_t c, std::mt19937_64 &rng, double density = 0.5) {
    std::bernoulli_distribution b(density);
    BitMatrix m(r, c);
    for (size_t i = 0; i < r; i++)
        for (size_t j = 0; j < c; j++)
            m.set(i, j, b(rng));
    return m;
}

// rank = log2 of the number of distinct row combinations
size_t rank_by_span(const BitMatrix &m) {
    std::set<std::vector<uint64_t>> span;
    for (uint64_t c = 0; c < (uint64_t{1} << m.rows()); c++) {
        BitVec v(m.cols());
        for (size_t i = 0; i < m.rows(); i++)
            if (c >> i & 1)
                v ^= m.row(i);
        span.insert(v.words());
    }
    size_t r = 0;
    while ((size_t{1} << r) < span.size())
        r++;
    return r;
}

}  // namespace

TEST(BitVec, SetGetAcrossWords) {
    BitVec v(130);
    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    EXPECT_EQ(v.popcount(), 3u);
    EXPECT_EQ(v.ones(), (std::vector<size_t>{0, 64, 129}));
    EXPECT_EQ(v.next_set(1), 64u);
    EXPECT_EQ(v.next_set(130), 130u);
    v.flip(64);
    EXPECT_FALSE(v.get(64));
}

TEST(BitVec, StringRoundTripSliceConcat) {
    auto v = BitVec::from_string("1011001");
    EXPECT_EQ(v.to_string(), "1011001");
    EXPECT_EQ(v.slice(2, 3).to_string(), "110");
    EXPECT_EQ(v.slice(0, 2).concat(v.slice(2, 5)), v);
    EXPECT_TRUE(BitVec::from_string("11").dot(BitVec::from_string("10")));
    EXPECT_FALSE(BitVec::from_string("11").dot(BitVec::from_string("11")));
}

TEST(Rank, MatchesSpanEnumeration) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; t++) {
        size_t r = 1 + rng() % 10, c = 1 + rng() % 90;
        auto m = random_matrix(r, c, rng, t % 3 == 0 ? 0.1 : 0.5);
        EXPECT_EQ(rank(m), rank_by_span(m));
        EXPECT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST(Rank, KnownMatrices) {
    EXPECT_EQ(rank(BitMatrix::identity(70)), 70u);
    EXPECT_EQ(rank(BitMatrix::from_strings({"110", "011", "101"})), 2u);
    EXPECT_EQ(rank(BitMatrix(4, 4)), 0u);
}

TEST(Rref, PivotsAreUnitColumns) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; t++) {
        auto m = random_matrix(12, 20, rng);
        auto e = rref(m);
        ASSERT_EQ(e.pivots.size(), rank(m));
        for (size_t i = 0; i < e.pivots.size(); i++)
            for (size_t r = 0; r < e.reduced.rows(); r++)
                EXPECT_EQ(e.reduced.get(r, e.pivots[i]), r == i);
    }
}

TEST(Nullspace, KernelHasFullDimension) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; t++) {
        auto m = random_matrix(8, 15, rng);
        auto ker = nullspace(m);
        EXPECT_EQ(ker.size() + rank(m), m.cols());
        for (auto &v : ker)
            EXPECT_FALSE(m.apply(v).any());
        EXPECT_EQ(rank(BitMatrix(ker, m.cols())), ker.size());
    }
}

TEST(InSpan, ReturnsValidCombination) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; t++) {
        auto m = random_matrix(6, 10, rng);
        BitVec target(10);
        for (size_t i = 0; i < 6; i++)
            if (rng() & 1)
                target ^= m.row(i);
        auto c = in_span(m, target);
        ASSERT_TRUE(c.has_value());
        BitVec back(10);
        for (size_t i = 0; i < 6; i++)
            if (c->get(i))
                back ^= m.row(i);
        EXPECT_EQ(back, target);
    }
    EXPECT_FALSE(in_span(BitMatrix::from_strings({"100", "010"}), BitVec::from_string("001")).has_value());
}

TEST(SpanBasis, CoefficientsOverInsertionOrder) {
    std::mt19937_64 rng(9);
    SpanBasis basis(40, 30);
    std::vector<BitVec> rows;
    for (int i = 0; i < 30; i++) {
        BitVec v(40);
        for (size_t j = 0; j < 40; j++)
            v.set(j, rng() % 4 == 0);
        if (i % 5 == 4)
            v = rows[i - 1] ^ rows[i - 2];
        rows.push_back(v);
        bool independent = basis.insert(v);
        if (i % 5 == 4)
            EXPECT_FALSE(independent);
    }
    EXPECT_EQ(basis.size(), 30u);
    EXPECT_EQ(basis.rank(), rank(BitMatrix(rows, 40)));
    BitVec probe = rows[3] ^ rows[17] ^ rows[29];
    auto c = basis.coefficients(probe);
    ASSERT_TRUE(c.has_value());
    BitVec back(40);
    for (size_t i = 0; i < 30; i++)
        if (c->get(i))
            back ^= rows[i];
    EXPECT_EQ(back, probe);
}

TEST(BitMatrix, ProductMatchesApply) {
    std::mt19937_64 rng(13);
    auto a = random_matrix(7, 9, rng), b = random_matrix(9, 5, rng);
    auto ab = a * b;
    for (size_t j = 0; j < 5; j++) {
        BitVec e(5);
        e.set(j, true);
        EXPECT_EQ(ab.apply(e), a.apply(b.apply(e)));
    }
}
