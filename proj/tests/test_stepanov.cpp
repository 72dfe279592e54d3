#include <gtest/gtest.h>

#include <kres/stepanov.hpp>

#include <random>

#include "oracles.hpp"

using namespace kres;

namespace {
SystemSpec make(u64 p, u64 t, std::vector<u64> a, std::vector<u64> th) {
    return SystemSpec(PrimeFieldCtx(p), t, std::move(a), std::move(th));
}

// theta_i = (alpha + a_i)^t makes alpha a common root.
SystemSpec planted(u64 p, u64 t, u64 r, u64 alpha, std::mt19937_64& rng) {
    std::vector<u64> a, th;
    while (a.size() < r) {
        const u64 v = rng() % p;
        if (std::find(a.begin(), a.end(), v) != a.end() || (v + alpha) % p == 0) continue;
        a.push_back(v);
        th.push_back(oracle::powmod_slow((v + alpha) % p, t, p));
    }
    return make(p, t, a, th);
}
}  // namespace

TEST(Params, KnownValues) {
    const auto P = derive_params(100, 9);
    EXPECT_EQ(P.M, 5u);
    EXPECT_EQ(P.s, 0u);
    EXPECT_EQ(P.T, 104u);
    EXPECT_EQ(P.D, 13u);
    EXPECT_EQ(P.N, 116u);
    EXPECT_EQ(P.constraint_rows(), 75u);
    EXPECT_EQ(P.unknowns(), 117u);
    EXPECT_TRUE(P.feasible);
    EXPECT_TRUE(P.condition4);

    for (long t : {1L, 7L, 50L}) {
        const auto Q = derive_params(t, 2);
        EXPECT_EQ(Q.M, 1u);
        EXPECT_EQ(Q.s, 0u);
        EXPECT_EQ(Q.T, static_cast<u64>(t));
        EXPECT_EQ(Q.D, static_cast<u64>(t));
        EXPECT_EQ(Q.N, static_cast<u64>(2 * t - 1));
        EXPECT_TRUE(Q.feasible);
    }

    const auto bad = derive_params(5, 9);
    EXPECT_FALSE(bad.feasible);
    EXPECT_FALSE(bad.quadratic_gate);
    EXPECT_FALSE(bad.within_r_bound);
}

TEST(Params, RejectsDegenerateInput) {
    EXPECT_THROW(derive_params(0, 3), std::invalid_argument);
    EXPECT_THROW(derive_params(10, 1), std::invalid_argument);
}

TEST(Params, InvariantsOverGrid) {
    for (long t = 1; t <= 600; ++t) {
        for (long r = 2; r <= 40; ++r) {
            const auto P = derive_params(t, r);
            ASSERT_EQ(P.M, static_cast<u64>((r + 1) / 2));
            ASSERT_TRUE(P.s_at_most_r_minus_2) << t << " " << r;
            ASSERT_EQ(P.D * static_cast<u64>(r - 1), P.T);
            ASSERT_EQ(P.T, static_cast<u64>(t) + P.M - 1 + P.s);
            ASSERT_EQ(P.N, P.d + P.T);
            // the r bound implies the quadratic test
            if (P.within_r_bound) {
                ASSERT_TRUE(P.quadratic_gate) << t << " " << r;
                ASSERT_TRUE(P.feasible) << t << " " << r;
                ASSERT_FALSE(P.fallback_r);
            }
            if (!P.feasible) {
                ASSERT_TRUE(P.fallback_r) << t << " " << r;
                ASSERT_LT(*P.fallback_r, static_cast<u64>(r));
                ASSERT_TRUE(derive_params(t, static_cast<long>(*P.fallback_r)).feasible);
            }
        }
    }
}

TEST(Params, MaxR) {
    EXPECT_EQ(max_r_for(5), 3u);
    EXPECT_EQ(max_r_for(100), 9u);
    for (u64 t = 1; t < 500; ++t) {
        EXPECT_TRUE(within_r_bound(t, max_r_for(t)));
        EXPECT_FALSE(within_r_bound(t, max_r_for(t) + 1));
    }
}

TEST(SystemSpec, Validation) {
    EXPECT_THROW(make(13, 0, {0, 1}, {1, 1}), std::invalid_argument);
    EXPECT_THROW(make(13, 3, {0}, {1}), std::invalid_argument);
    EXPECT_THROW(make(13, 3, {0, 1}, {1}), std::invalid_argument);
    EXPECT_THROW(make(13, 7, {0, 1}, {1, 1}), std::invalid_argument);   // p <= 2t
    EXPECT_THROW(make(13, 3, {0, 1}, {1, 13}), std::invalid_argument);  // zero target
    EXPECT_THROW(make(13, 3, {2, 15}, {1, 1}), std::invalid_argument);  // 15 = 2 mod 13
    EXPECT_NO_THROW(make(13, 6, {0, 1}, {1, 1}));
}

TEST(Constraints, ThreeBySix) {
    const auto S = make(13, 3, {0, 1}, {1, 1});
    const auto P = derive_params(3, 2);
    EXPECT_EQ(P.M, 1u);
    EXPECT_EQ(P.d, 2u);
    const auto sys = build_constraint_system(S, P);
    EXPECT_EQ(sys.matrix.rows(), 3u);
    EXPECT_EQ(sys.matrix.cols(), 6u);
    // x^j (x+a)^3 -> x^j theta: row q, column i*3 + j is [q == j]
    for (std::size_t q = 0; q < 3; ++q)
        for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(sys.matrix(q, c), (c % 3 == q) ? 1u : 0u);

    const auto aux = solve_auxiliary(S, P);
    EXPECT_FALSE(aux.F.is_zero());
    EXPECT_LE(aux.F.degree(), 5);
    // first free column is G_1's constant: F = (x+1)^3 - x^3
    EXPECT_EQ(aux.F, DensePoly(13, {1, 3, 3}));
}

// Independent rebuild through the Leibniz rule.
TEST(Constraints, MatchLeibnizOracle) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 40; ++it) {
        const u64 p = std::vector<u64>{101, 211, 401, 1009}[rng() % 4];
        const u64 t = 4 + rng() % ((p - 1) / 2 - 4);
        const u64 r = 2 + rng() % (max_r_for(t) - 1);
        std::vector<u64> a, th;
        while (a.size() < r) {
            const u64 v = rng() % p;
            if (std::find(a.begin(), a.end(), v) != a.end()) continue;
            a.push_back(v);
            th.push_back(1 + rng() % (p - 1));
        }
        const auto S = make(p, t, a, th);
        const auto P = derive_params(static_cast<long>(t), static_cast<long>(r));
        ASSERT_TRUE(P.feasible);
        const auto sys = build_constraint_system(S, P);
        std::vector<u64> per_block;
        for (u64 l = 0; l < P.M; ++l) per_block.push_back(P.d + P.M + P.s - l);
        const auto ref = oracle::leibniz_rows(p, t, P.T, P.D, P.M, per_block, a, th);
        ASSERT_EQ(ref.size(), sys.matrix.rows());
        for (std::size_t i = 0; i < ref.size(); ++i)
            for (std::size_t j = 0; j < ref[i].size(); ++j) ASSERT_EQ(sys.matrix(i, j), ref[i][j]) << it << " " << i << " " << j;
    }
}

TEST(Constraints, UnknownCap) {
    const auto S = make(1009, 400, {0, 1}, {1, 1});
    const auto P = derive_params(400, 2);
    EXPECT_THROW(build_constraint_system(S, P, 100), std::length_error);
}

TEST(Constraints, ParamsMustMatchSpec) {
    const auto S = make(101, 20, {0, 1, 2}, {1, 1, 1});
    EXPECT_THROW(build_constraint_system(S, derive_params(20, 2)), std::invalid_argument);
    EXPECT_THROW(build_constraint_system(S, derive_params(21, 3)), std::invalid_argument);
}

TEST(LiteralFormula, BlocksAgreeBelowSecondDerivative) {
    const auto S = make(1009, 100, {1, 4, 7, 10, 13}, {2, 3, 4, 5, 6});
    const auto P = derive_params(100, 5);
    ASSERT_EQ(P.M, 3u);
    const auto A = build_constraint_system(S, P);
    const auto B = build_literal_formula_system(S, P);
    const std::size_t second = A.block_offsets[2];
    bool low_equal = true, high_equal = true;
    for (std::size_t i = 0; i < A.matrix.rows(); ++i)
        for (std::size_t j = 0; j < A.matrix.cols(); ++j) {
            if (A.matrix(i, j) == B.matrix(i, j)) continue;
            (i < second ? low_equal : high_equal) = false;
        }
    EXPECT_TRUE(low_equal);
    EXPECT_FALSE(high_equal);
    // the dropped binomial does not change the solution space here
    const auto cmp = compare_with_literal_formula(S, P);
    EXPECT_TRUE(cmp.same());
    EXPECT_EQ(cmp.rank_derived, 84u);
}

TEST(Auxiliary, PropertiesOnPlantedSystems) {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 40; ++it) {
        const u64 p = std::vector<u64>{101, 307, 613}[rng() % 3];
        const auto divs = PrimeFieldCtx(p).divisors_p_minus_1();
        const u64 k = divs[1 + rng() % (divs.size() - 2)];
        const u64 t = (p - 1) / k;
        if (t < 2) continue;
        const u64 r = 2 + rng() % (max_r_for(t) - 1);
        const u64 alpha = rng() % p;
        const auto S = planted(p, t, r, alpha, rng);
        const auto P = derive_params(static_cast<long>(t), static_cast<long>(r));
        const auto aux = solve_auxiliary(S, P);
        ASSERT_FALSE(aux.F.is_zero());
        ASSERT_LE(aux.F.degree(), static_cast<long>(P.N));
        for (std::size_t i = 0; i < r; ++i) ASSERT_LE(aux.G(i).degree(), static_cast<long>(P.d));
        // F assembled with the oracle polynomial arithmetic
        oracle::Poly F;
        for (std::size_t i = 0; i < r; ++i)
            F = oracle::add(F, oracle::mul(aux.G(i).coeffs(), oracle::linear_power(S.shifts()[i], P.T, p), p), p);
        ASSERT_EQ(F, aux.F.coeffs());
        ASSERT_GE(*root_multiplicity(aux.F, alpha), P.M) << p << " " << t << " " << r;
        // derivatives below M vanish at alpha
        DensePoly f = aux.F;
        for (u64 l = 0; l < P.M; ++l, f = formal_derivative(f)) ASSERT_EQ(f.eval(alpha), 0u);
    }
}

TEST(CommonRoots, KnownValues) {
    EXPECT_TRUE(common_roots_oracle(make(13, 4, {0, 1}, {1, 1})).empty());
    EXPECT_TRUE(oracle::common_roots_exhaustive(13, 4, {0, 5}, {1, 1}).empty());
    EXPECT_EQ(common_roots_oracle(make(13, 4, {0, 5}, {1, 1})), oracle::common_roots_exhaustive(13, 4, {0, 5}, {1, 1}));
}

TEST(CommonRoots, GcdMatchesExhaustive) {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 300; ++it) {
        const u64 p = std::vector<u64>{11, 13, 31, 61, 101, 241}[rng() % 6];
        const auto divs = PrimeFieldCtx(p).divisors_p_minus_1();
        const u64 t = (p - 1) / divs[1 + rng() % (divs.size() - 1)];
        const u64 r = 2 + rng() % 4;
        std::vector<u64> a, th;
        const bool plant = it % 2 == 0;
        const u64 alpha = rng() % p;
        while (a.size() < r) {
            const u64 v = rng() % p;
            if (std::find(a.begin(), a.end(), v) != a.end() || (plant && (v + alpha) % p == 0)) continue;
            a.push_back(v);
            th.push_back(plant ? oracle::powmod_slow((v + alpha) % p, t, p) : 1 + rng() % (p - 1));
        }
        ASSERT_EQ(common_roots_oracle(make(p, t, a, th)), oracle::common_roots_exhaustive(p, t, a, th));
    }
}

TEST(Lemma, ReportOnPlantedSystems) {
    std::mt19937_64 rng(24);
    for (int it = 0; it < 30; ++it) {
        const u64 p = 401;
        const u64 t = std::vector<u64>{20, 25, 40, 50, 80, 100}[rng() % 6];
        const u64 r = 2 + rng() % (max_r_for(t) - 1);
        const auto rep = verify_lemma_commonsol(planted(p, t, r, rng() % p, rng));
        EXPECT_FALSE(rep.roots.empty());
        EXPECT_TRUE(rep.multiplicity_ok);
        EXPECT_TRUE(rep.count_ok);
        EXPECT_EQ(rep.effective_r, r);
        if (rep.r_even) {
            EXPECT_TRUE(rep.lemma_ok);
        }
        EXPECT_LE(static_cast<u64>(rep.deg_F), rep.params.N);
    }
}

TEST(Lemma, RequiresRBound) {
    EXPECT_THROW(verify_lemma_commonsol(make(101, 5, {0, 1, 2, 3}, {1, 1, 1, 1})), std::invalid_argument);
}

TEST(Lemma, RTwoIsGcdDegreeBound) {
    EXPECT_TRUE(within_lemma_bound(2 * 7 + 3, 7, 2));
    EXPECT_FALSE(within_lemma_bound(2 * 7 + 4, 7, 2));
    // t roots is the most a degree-t member can have
    const auto rep = verify_lemma_commonsol(make(13, 3, {0, 1}, {1, 1}));
    EXPECT_LE(rep.roots.size(), 3u);
    EXPECT_TRUE(rep.lemma_ok);
}
