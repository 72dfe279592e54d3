#ifndef KRES_FIELDCORE_HPP
#define KRES_FIELDCORE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#if !defined(__SIZEOF_INT128__)
#error "kres/fieldcore.hpp requires unsigned __int128 (GCC/Clang)."
#endif

namespace kres {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Largest modulus accepted by PrimeFieldCtx (2^61 - 1).
inline constexpr u64 kMaxModulus = (u64{1} << 61) - 1;

namespace detail {

inline u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline u64 gcd(u64 a, u64 b) noexcept {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Miller-Rabin with the first twelve prime bases: deterministic for all n < 3.3e24,
// which covers the whole 64-bit range.
inline bool is_prime_u64(u64 n) noexcept {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho; n must be odd and composite.
inline u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        constexpr u64 batch = 128;
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = gcd(q, n);
                k += batch;
            }
            r <<= 1;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 f = pollard_rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

}  // namespace detail

/// Prime factors of n with multiplicity, ascending. Trial division up to 1e6,
/// Pollard rho on whatever cofactor remains.
inline std::vector<u64> factorize(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    for (u64 q = 2; q <= 1'000'000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
        while (n % q == 0) {
            out.push_back(q);
            n /= q;
        }
    }
    detail::factor_into(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// All positive divisors of n, ascending.
inline std::vector<u64> divisors_from_factors(const std::vector<u64>& factors) {
    std::vector<u64> divs{1};
    for (std::size_t i = 0; i < factors.size();) {
        u64 q = factors[i];
        std::size_t mult = 0;
        while (i < factors.size() && factors[i] == q) {
            ++mult;
            ++i;
        }
        const std::size_t base = divs.size();
        u64 pw = 1;
        for (std::size_t e = 1; e <= mult; ++e) {
            pw *= q;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// The ambient prime field. Immutable after construction.
class PrimeFieldCtx {
public:
    explicit PrimeFieldCtx(u64 p) : p_(p) {
        if (p < 2 || p > kMaxModulus) {
            throw std::invalid_argument("PrimeFieldCtx: modulus out of range [2, 2^61-1]: " +
                                        std::to_string(p));
        }
        if (!detail::is_prime_u64(p)) {
            throw std::invalid_argument("PrimeFieldCtx: modulus is not prime: " + std::to_string(p));
        }
        factors_ = factorize(p - 1);
    }

    u64 p() const noexcept { return p_; }
    const std::vector<u64>& factors_p_minus_1() const noexcept { return factors_; }

    std::vector<u64> prime_divisors_p_minus_1() const {
        std::vector<u64> out = factors_;
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    std::vector<u64> divisors_p_minus_1() const { return divisors_from_factors(factors_); }
    bool divides_p_minus_1(u64 k) const noexcept { return k >= 1 && (p_ - 1) % k == 0; }

    u64 reduce(u64 a) const noexcept { return a % p_; }
    u64 reduce_signed(i64 a) const noexcept {
        i64 r = a % static_cast<i64>(p_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
    }
    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const noexcept { return detail::mul_mod(a, b, p_); }
    u64 pow(u64 a, u64 e) const noexcept { return detail::pow_mod(a, e, p_); }
    u64 inv(u64 a) const {
        if (a % p_ == 0) throw std::domain_error("PrimeFieldCtx::inv: zero has no inverse");
        return pow(a, p_ - 2);
    }

    friend bool operator==(const PrimeFieldCtx& a, const PrimeFieldCtx& b) noexcept { return a.p_ == b.p_; }

private:
    u64 p_;
    std::vector<u64> factors_;
};

/// The progression {b n + c : n = 0, 1, ...}.
struct ApSpec {
    u64 b = 1;
    u64 c = 0;
};

/// Checks 1 <= b < p and reduces c into [0, p-1].
inline ApSpec normalize(const PrimeFieldCtx& ctx, ApSpec ap) {
    if (ap.b == 0 || ap.b >= ctx.p()) {
        throw std::invalid_argument("ApSpec: step b must satisfy 1 <= b < p");
    }
    ap.c %= ctx.p();
    return ap;
}

/// base^exp in F_p; 0^0 = 1.
inline u64 mod_pow(u64 base, u64 exp, const PrimeFieldCtx& ctx) { return ctx.pow(base, exp); }

namespace detail {
inline void check_k(const PrimeFieldCtx& ctx, u64 k) {
    if (!ctx.divides_p_minus_1(k)) {
        throw std::invalid_argument("k = " + std::to_string(k) + " does not divide p - 1 = " +
                                    std::to_string(ctx.p() - 1));
    }
}
}  // namespace detail

/// Euler's criterion: a is a k-th power iff a^((p-1)/k) = 1. Zero is rejected.
inline bool is_kth_residue(u64 a, u64 k, const PrimeFieldCtx& ctx) {
    detail::check_k(ctx, k);
    if (a % ctx.p() == 0) throw std::invalid_argument("is_kth_residue: a must be nonzero mod p");
    return ctx.pow(a, (ctx.p() - 1) / k) == 1;
}

/// Precomputed k-th power character for all of F_p; index 0 holds 0.
/// chi[a] = a^((p-1)/k), so a is a residue iff chi[a] == 1.
class ResidueTable {
public:
    ResidueTable(const PrimeFieldCtx& ctx, u64 k) : k_(k) {
        detail::check_k(ctx, k);
        const u64 p = ctx.p();
        const u64 t = (p - 1) / k;
        chi_.assign(p, 0);
        // Completely multiplicative: compute on primes, multiply through.
        std::vector<u64> spf(p, 0);
        if (p > 1) chi_[1] = 1;
        for (u64 a = 2; a < p; ++a) {
            if (spf[a] == 0) {
                chi_[a] = ctx.pow(a, t);
                for (u64 m = a; m < p; m += a) {
                    if (spf[m] == 0) spf[m] = a;
                }
            } else {
                chi_[a] = ctx.mul(chi_[spf[a]], chi_[a / spf[a]]);
            }
        }
    }

    u64 k() const noexcept { return k_; }
    u64 character(u64 a) const { return chi_.at(a); }
    bool is_residue(u64 a) const { return chi_.at(a) == 1; }
    std::size_t size() const noexcept { return chi_.size(); }

private:
    u64 k_;
    std::vector<u64> chi_;
};

struct ApHit {
    u64 index = 0;  // n
    u64 value = 0;  // b n + c as an integer, c normalized
};

namespace detail {
inline u64 ap_value(const ApSpec& ap, u64 n) {
    u64 v = 0;
    if (__builtin_mul_overflow(ap.b, n, &v) || __builtin_add_overflow(v, ap.c, &v)) {
        throw std::overflow_error("AP term b*n + c overflows 64 bits");
    }
    return v;
}
}  // namespace detail

/// Smallest n >= 0 with (b n + c) mod p a k-th power non-residue. Terms divisible by p
/// are skipped. Returns nullopt when one full period contains no non-residue.
inline std::optional<ApHit> least_nonresidue_in_ap(const PrimeFieldCtx& ctx, u64 k, ApSpec ap) {
    detail::check_k(ctx, k);
    ap = normalize(ctx, ap);
    const u64 p = ctx.p();
    const u64 t = (p - 1) / k;
    u64 term = ap.c;
    for (u64 n = 0; n < p; ++n) {
        if (term != 0 && ctx.pow(term, t) != 1) return ApHit{n, detail::ap_value(ap, n)};
        term = ctx.add(term, ap.b);
    }
    return std::nullopt;
}

/// Same as above, against a precomputed table.
inline std::optional<ApHit> least_nonresidue_in_ap(const PrimeFieldCtx& ctx, const ResidueTable& table,
                                                   ApSpec ap) {
    ap = normalize(ctx, ap);
    const u64 p = ctx.p();
    u64 term = ap.c;
    for (u64 n = 0; n < p; ++n) {
        if (term != 0 && !table.is_residue(term)) return ApHit{n, detail::ap_value(ap, n)};
        term = ctx.add(term, ap.b);
    }
    return std::nullopt;
}

enum class ResidueClass { residue, nonresidue };

/// Which run notion longest_run_in_ap measures.
///   membership   - every term is in the requested class (terms may sit in different cosets)
///   same_coset   - every term has the same k-th power character value
enum class RunKind { membership, same_coset };

/// Longest block of consecutive AP terms in the requested class. The progression is
/// periodic with period p and has exactly one term = 0 mod p per period, which breaks
/// every run, so scanning one period cyclically from just after that term sees every
/// run of the infinite progression.
inline u64 longest_run_in_ap(const PrimeFieldCtx& ctx, const ResidueTable& table, ApSpec ap, ResidueClass cls,
                             RunKind kind = RunKind::membership) {
    ap = normalize(ctx, ap);
    const u64 p = ctx.p();
    // n0: the index with b n0 + c = 0 mod p.
    const u64 n0 = ctx.mul(ctx.neg(ap.c), ctx.inv(ap.b));
    u64 term = ctx.add(ctx.mul(ap.b, (n0 + 1) % p), ap.c);
    u64 best = 0, cur = 0, prev_chi = 0;
    for (u64 step = 0; step + 1 < p; ++step) {
        const u64 chi = table.character(term);
        const bool in_class = (chi == 1) == (cls == ResidueClass::residue);
        if (!in_class) {
            cur = 0;
        } else if (kind == RunKind::same_coset && cur > 0 && chi != prev_chi) {
            cur = 1;
        } else {
            ++cur;
        }
        prev_chi = chi;
        best = std::max(best, cur);
        term = ctx.add(term, ap.b);
    }
    return best;
}

inline u64 longest_run_in_ap(const PrimeFieldCtx& ctx, u64 k, ApSpec ap, ResidueClass cls,
                             RunKind kind = RunKind::membership) {
    return longest_run_in_ap(ctx, ResidueTable(ctx, k), ap, cls, kind);
}

}  // namespace kres

#endif  // KRES_FIELDCORE_HPP
