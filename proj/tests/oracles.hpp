#pragma once

// Brute-force reference implementations used only by the tests. None of these
// call into the library; they trade speed for obviousness.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

inline u64 powmod_slow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    for (u64 i = 0; i < e; ++i) r = mulmod(r, a % p, p);
    return r;
}

inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// {x^k mod p : 1 <= x < p}, by enumeration.
inline std::set<u64> kth_powers(u64 p, u64 k) {
    std::set<u64> s;
    for (u64 x = 1; x < p; ++x) {
        u64 v = 1;
        for (u64 i = 0; i < k; ++i) v = v * x % p;
        s.insert(v);
    }
    return s;
}

/// Pascal's triangle up to row n.
inline std::vector<std::vector<mpz_class>> pascal(long n) {
    std::vector<std::vector<mpz_class>> t(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
        for (long j = 1; j < i; ++j)
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
    return t;
}

inline mpz_class binom(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    mpz_class r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Determinant by permutation expansion. n <= 8 or so.
inline mpz_class leibniz_det(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    mpz_class total = 0;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        mpz_class prod = 1;
        for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= a[i][perm[i]];
        total += inv % 2 ? -prod : prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Determinant by cofactor expansion along the first row, exact rationals avoided.
inline mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    mpz_class total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpz_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        const mpz_class term = a[0][c] * cofactor_det(minor);
        total += c % 2 ? -term : term;
    }
    return total;
}

// ---- polynomials mod p as plain coefficient vectors (low degree first) ----

using Poly = std::vector<u64>;

inline Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline Poly mul(const Poly& f, const Poly& g, u64 p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + mulmod(f[i], g[j], p)) % p;
    return trim(h);
}

inline Poly add(const Poly& f, const Poly& g, u64 p) {
    Poly h(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) h[i] = (h[i] + f[i]) % p;
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = (h[i] + g[i]) % p;
    return trim(h);
}

inline Poly scale(const Poly& f, u64 s, u64 p) {
    Poly h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) h[i] = mulmod(f[i], s % p, p);
    return trim(h);
}

/// (x + a)^e by repeated multiplication.
inline Poly linear_power(u64 a, u64 e, u64 p) {
    Poly r{1 % p};
    for (u64 i = 0; i < e; ++i) r = mul(r, Poly{a % p, 1 % p}, p);
    return trim(r);
}

inline u64 eval(const Poly& f, u64 x, u64 p) {
    u64 acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (mulmod(acc, x, p) + f[i]) % p;
    return acc;
}

/// Falling factorial n (n-1) ... (n-k+1) mod p.
inline u64 falling(u64 n, u64 k, u64 p) {
    u64 r = 1 % p;
    for (u64 i = 0; i < k; ++i) r = mulmod(r, (n - i) % p, p);
    return r;
}

/// Constraint rows via the Leibniz rule: for G_i = x^jj, the l-th derivative of
/// x^jj (x+a)^T is sum_j C(l,j) (jj)_j x^(jj-j) (T)_(l-j) (x+a)^(T-l+j); at a
/// common root (x+a)^t = theta, so (x+a)^(T-l+j) becomes theta (x+a)^(T-t-l+j).
/// Returns rows as a dense matrix (block l has rows_per_block[l] rows), columns i*D+jj.
inline std::vector<std::vector<u64>> leibniz_rows(u64 p, u64 t, u64 T, u64 D, u64 M,
                                                  const std::vector<u64>& rows_per_block,
                                                  const std::vector<u64>& shifts, const std::vector<u64>& targets) {
    u64 total = 0;
    for (u64 b : rows_per_block) total += b;
    std::vector<std::vector<u64>> out(total, std::vector<u64>(shifts.size() * D, 0));
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        for (u64 jj = 0; jj < D; ++jj) {
            u64 offset = 0;
            for (u64 l = 0; l < M; ++l) {
                Poly acc;
                for (u64 j = 0; j <= std::min(l, jj); ++j) {
                    const u64 cl = static_cast<u64>(mpz_class(binom(static_cast<long>(l), static_cast<long>(j)) % p).get_ui());
                    u64 c = mulmod(cl, falling(jj, j, p), p);
                    c = mulmod(c, falling(T, l - j, p), p);
                    c = mulmod(c, targets[i], p);
                    Poly term = linear_power(shifts[i], T - t - l + j, p);
                    term.insert(term.begin(), jj - j, 0);
                    acc = add(acc, scale(term, c, p), p);
                }
                for (std::size_t q = 0; q < acc.size(); ++q) out[offset + q][i * D + jj] = acc[q];
                offset += rows_per_block[l];
            }
        }
    }
    return out;
}

/// Rank over F_p by plain Gaussian elimination on a copy.
inline std::size_t rank_mod(std::vector<std::vector<u64>> a, u64 p) {
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        u64 inv = 1;
        for (u64 e = p - 2, b = a[rank][c]; e; e >>= 1, b = mulmod(b, b, p))
            if (e & 1) inv = mulmod(inv, b, p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const u64 f = mulmod(a[r][c], inv, p);
            for (std::size_t k = c; k < cols; ++k) a[r][k] = (a[r][k] + p - mulmod(f, a[rank][k], p)) % p;
        }
        ++rank;
    }
    return rank;
}

/// All alpha in F_p with (alpha + a_i)^t = theta_i for every i.
inline std::vector<u64> common_roots_exhaustive(u64 p, u64 t, const std::vector<u64>& shifts,
                                                const std::vector<u64>& targets) {
    std::vector<u64> roots;
    for (u64 alpha = 0; alpha < p; ++alpha) {
        bool ok = true;
        for (std::size_t i = 0; i < shifts.size() && ok; ++i) {
            u64 v = 1, b = (alpha + shifts[i]) % p;
            for (u64 e = t; e; e >>= 1, b = mulmod(b, b, p))
                if (e & 1) v = mulmod(v, b, p);
            ok = v == targets[i] % p;
        }
        if (ok) roots.push_back(alpha);
    }
    return roots;
}

}  // namespace oracle
