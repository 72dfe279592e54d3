#include <gtest/gtest.h>

#include <kres/exact_matrix.hpp>
#include <kres/modmatrix.hpp>

#include <random>

#include "oracles.hpp"

using namespace kres;

namespace {
ModMatrix random_mod(u64 p, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    ModMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng() % p;
    return m;
}

std::vector<std::vector<mpz_class>> to_rows(const IntMatrix& m) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
    return a;
}
}  // namespace

TEST(ModMatrix, RankMatchesOracle) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
        const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        ModMatrix m = random_mod(5, r, c, rng);
        std::vector<std::vector<u64>> rows(r, std::vector<u64>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) rows[i][j] = m(i, j);
        EXPECT_EQ(rank(m), oracle::rank_mod(rows, 5));
    }
}

TEST(ModMatrix, NullspaceVectorIsInKernel) {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 60; ++it) {
        const std::size_t r = 1 + rng() % 6, c = r + 1 + rng() % 4;
        const ModMatrix m = random_mod(101, r, c, rng);
        const auto v = nullspace_vector(m);
        ASSERT_TRUE(v);  // wide matrices always have a kernel
        EXPECT_TRUE(std::any_of(v->begin(), v->end(), [](u64 x) { return x != 0; }));
        for (u64 x : apply(m, *v)) EXPECT_EQ(x, 0u);
    }
}

TEST(ModMatrix, NullspaceIsDeterministicAndFirstFreeColumnIsOne) {
    ModMatrix m(7, 1, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    const auto v = nullspace_vector(m);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, (std::vector<u64>{5, 1, 0}));
    EXPECT_EQ(nullspace_vector(m), v);
}

TEST(ModMatrix, TrivialKernel) {
    ModMatrix id(13, 3, 3);
    for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
    EXPECT_FALSE(nullspace_vector(id));
    EXPECT_EQ(det_mod(id), 1u);
}

TEST(ModMatrix, VstackShape) {
    ModMatrix a(7, 2, 3), b(7, 1, 3);
    b(0, 2) = 4;
    const auto s = a.vstack(b);
    EXPECT_EQ(s.rows(), 3u);
    EXPECT_EQ(s(2, 2), 4u);
    EXPECT_THROW(a.vstack(ModMatrix(7, 1, 2)), std::invalid_argument);
}

TEST(IntDeterminant, KnownValues) {
    EXPECT_EQ(bareiss_determinant(IntMatrix::identity(5)), 1);
    EXPECT_EQ(bareiss_determinant(IntMatrix{{3, 3}, {1, 2}}), 3);
    EXPECT_EQ(bareiss_determinant(IntMatrix{{7, 1}, {2, 1}}), 5);
    EXPECT_EQ(bareiss_determinant(IntMatrix(0, 0)), 1);
    EXPECT_THROW(bareiss_determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST(IntDeterminant, NeedsPivotSwap) {
    EXPECT_EQ(bareiss_determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(bareiss_determinant(IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), -1);
    EXPECT_EQ(bareiss_determinant(IntMatrix{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}), 0);
}

// Bareiss, CRT and permutation expansion agree on random integer matrices.
TEST(IntDeterminant, ThreeWayAgreement) {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 120; ++it) {
        const std::size_t n = 1 + rng() % 6;
        IntMatrix m(n, n);
        const long range = it % 3 == 0 ? 3 : 1000000;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % (2 * range + 1)) - range;
        const mpz_class ref = oracle::leibniz_det(to_rows(m));
        EXPECT_EQ(bareiss_determinant(m), ref);
        EXPECT_EQ(crt_determinant(m), ref);
        EXPECT_EQ(oracle::cofactor_det(to_rows(m)), ref);
    }
}

TEST(IntDeterminant, HugeEntriesNeedSeveralCrtPrimes) {
    IntMatrix m(3, 3);
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 40);
    m(0, 0) = big;
    m(0, 1) = 3;
    m(1, 1) = -big;
    m(1, 2) = 7;
    m(2, 0) = 5;
    m(2, 2) = big + 1;
    const mpz_class ref = oracle::leibniz_det(to_rows(m));
    EXPECT_EQ(bareiss_determinant(m), ref);
    EXPECT_EQ(crt_determinant(m), ref);
}

TEST(IntDeterminant, ModularImageMatches) {
    std::mt19937_64 rng(14);
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 2 + rng() % 5;
        IntMatrix m(n, n);
        ModMatrix mm(1009, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const long v = static_cast<long>(rng() % 2001) - 1000;
                m(i, j) = v;
                mm(i, j) = static_cast<u64>((v % 1009 + 1009) % 1009);
            }
        const mpz_class d = bareiss_determinant(m);
        EXPECT_EQ(det_mod(mm), mpz_fdiv_ui(d.get_mpz_t(), 1009));
    }
}
