#ifndef KRES_POLYRING_HPP
#define KRES_POLYRING_HPP

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fieldcore.hpp"

namespace kres {

/// Dense univariate polynomial over F_p. coeffs()[i] is the coefficient of x^i;
/// trailing zeros are trimmed so the zero polynomial has no coefficients.
class DensePoly {
public:
    explicit DensePoly(u64 p) : p_(p) {}
    DensePoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& v : c_) v %= p_;
        trim();
    }
    DensePoly(u64 p, std::initializer_list<i64> coeffs) : p_(p) {
        c_.reserve(coeffs.size());
        for (i64 v : coeffs) {
            i64 r = v % static_cast<i64>(p_);
            c_.push_back(static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r));
        }
        trim();
    }

    static DensePoly constant(u64 p, u64 value) { return DensePoly(p, std::vector<u64>{value}); }
    static DensePoly x(u64 p) { return DensePoly(p, std::vector<u64>{0, 1}); }
    /// c * x^e
    static DensePoly monomial(u64 p, u64 c, std::size_t e) {
        std::vector<u64> v(e + 1, 0);
        v[e] = c;
        return DensePoly(p, std::move(v));
    }

    u64 modulus() const noexcept { return p_; }
    const std::vector<u64>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    u64 coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    u64 leading() const noexcept { return c_.empty() ? 0 : c_.back(); }

    u64 eval(u64 x) const {
        u64 acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = (detail::mul_mod(acc, x, p_) + c_[i]) % p_;
        return acc;
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) noexcept {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    friend std::ostream& operator<<(std::ostream& os, const DensePoly& f) {
        if (f.is_zero()) return os << "0";
        bool first = true;
        for (std::size_t i = f.c_.size(); i-- > 0;) {
            if (f.c_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || f.c_[i] != 1) os << f.c_[i];
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
        }
        return os;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    u64 p_;
    std::vector<u64> c_;

    friend DensePoly operator+(const DensePoly&, const DensePoly&);
    friend DensePoly operator-(const DensePoly&, const DensePoly&);
    friend DensePoly operator*(const DensePoly&, const DensePoly&);
};

namespace detail {
inline void same_ring(const DensePoly& f, const DensePoly& g) {
    if (f.modulus() != g.modulus()) throw std::invalid_argument("DensePoly: mismatched moduli");
}
}  // namespace detail

inline DensePoly operator+(const DensePoly& f, const DensePoly& g) {
    detail::same_ring(f, g);
    const u64 p = f.p_;
    std::vector<u64> out(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        u64 s = f.coeff(i) + g.coeff(i);
        out[i] = s >= p ? s - p : s;
    }
    return DensePoly(p, std::move(out));
}

inline DensePoly operator-(const DensePoly& f, const DensePoly& g) {
    detail::same_ring(f, g);
    const u64 p = f.p_;
    std::vector<u64> out(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        u64 a = f.coeff(i), b = g.coeff(i);
        out[i] = a >= b ? a - b : a + p - b;
    }
    return DensePoly(p, std::move(out));
}

inline DensePoly operator-(const DensePoly& f) { return DensePoly(f.modulus()) - f; }

// Schoolbook. Accumulates in 128 bits and reduces once per output coefficient
// while the partial sum cannot overflow.
inline DensePoly operator*(const DensePoly& f, const DensePoly& g) {
    detail::same_ring(f, g);
    const u64 p = f.p_;
    if (f.is_zero() || g.is_zero()) return DensePoly(p);
    const std::size_t n = f.c_.size(), m = g.c_.size();
    std::vector<u128> acc(n + m - 1, 0);
    // (2^61)^2 = 2^122; 32 products fit under 2^127.
    constexpr std::size_t flush_every = 32;
    std::vector<u64> out(n + m - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (f.c_[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) acc[i + j] += static_cast<u128>(f.c_[i]) * g.c_[j];
        if (i % flush_every == flush_every - 1) {
            for (auto& a : acc) a %= p;
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<u64>(acc[k] % p);
    return DensePoly(p, std::move(out));
}

inline DensePoly scalar_mul(const DensePoly& f, u64 s) {
    std::vector<u64> out = f.coeffs();
    for (auto& v : out) v = detail::mul_mod(v, s % f.modulus(), f.modulus());
    return DensePoly(f.modulus(), std::move(out));
}

/// f * x^e
inline DensePoly shift_up(const DensePoly& f, std::size_t e) {
    if (f.is_zero()) return f;
    std::vector<u64> out(e, 0);
    out.insert(out.end(), f.coeffs().begin(), f.coeffs().end());
    return DensePoly(f.modulus(), std::move(out));
}

/// Formal derivative in characteristic p.
inline DensePoly formal_derivative(const DensePoly& f) {
    const u64 p = f.modulus();
    const auto& c = f.coeffs();
    if (c.size() <= 1) return DensePoly(p);
    std::vector<u64> out(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = detail::mul_mod(c[i], i % p, p);
    return DensePoly(p, std::move(out));
}

inline DensePoly pow(DensePoly base, u64 e) {
    DensePoly result = DensePoly::constant(base.modulus(), 1);
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

/// (x + a)^e, by the binomial recurrence when e < p, by squaring otherwise.
inline DensePoly shifted_power(u64 p, u64 a, u64 e) {
    a %= p;
    if (e >= p) return pow(DensePoly(p, std::vector<u64>{a, 1}), e);
    if (a == 0) return DensePoly::monomial(p, 1, e);
    // coefficient of x^q is C(e, q) a^(e - q); walk q downward from e.
    std::vector<u64> out(e + 1);
    out[e] = 1;
    for (u64 q = e; q-- > 0;) {
        // C(e, q) = C(e, q+1) (q+1) / (e-q)
        u64 v = detail::mul_mod(out[q + 1], (q + 1) % p, p);
        v = detail::mul_mod(v, detail::pow_mod(e - q, p - 2, p), p);
        out[q] = detail::mul_mod(v, a, p);
    }
    // out[q] currently holds C(e,q) a^(e-q) because each step multiplies by one more a.
    return DensePoly(p, std::move(out));
}

/// g(x + a): Taylor shift, O(deg^2).
inline DensePoly taylor_shift(const DensePoly& g, u64 a) {
    const u64 p = g.modulus();
    if (g.is_zero()) return g;
    a %= p;
    // Horner in the ring: acc = acc * (x + a) + c_i
    std::vector<u64> acc;
    const auto& c = g.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc.push_back(0);
        for (std::size_t j = acc.size() - 1; j > 0; --j) {
            acc[j] = (acc[j - 1] + detail::mul_mod(acc[j], a, p)) % p;
        }
        acc[0] = (detail::mul_mod(acc[0], a, p) + c[i]) % p;
    }
    return DensePoly(p, std::move(acc));
}

/// Quotient and remainder; throws on division by zero.
inline std::pair<DensePoly, DensePoly> divmod(const DensePoly& f, const DensePoly& g) {
    detail::same_ring(f, g);
    if (g.is_zero()) throw std::domain_error("divmod: division by the zero polynomial");
    const u64 p = f.modulus();
    if (f.degree() < g.degree()) return {DensePoly(p), f};
    std::vector<u64> r = f.coeffs();
    const auto& gc = g.coeffs();
    const std::size_t dg = gc.size() - 1;
    const u64 lead_inv = detail::pow_mod(gc.back(), p - 2, p);
    std::vector<u64> q(r.size() - dg, 0);
    for (std::size_t i = r.size(); i-- > dg;) {
        const u64 coef = detail::mul_mod(r[i], lead_inv, p);
        q[i - dg] = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) {
            const u64 sub = detail::mul_mod(coef, gc[j], p);
            u64& slot = r[i - dg + j];
            slot = slot >= sub ? slot - sub : slot + p - sub;
        }
    }
    r.resize(dg);
    return {DensePoly(p, std::move(q)), DensePoly(p, std::move(r))};
}

inline DensePoly monic(const DensePoly& f) {
    if (f.is_zero()) return f;
    return scalar_mul(f, detail::pow_mod(f.leading(), f.modulus() - 2, f.modulus()));
}

/// Monic gcd by the Euclidean algorithm.
inline DensePoly poly_gcd(DensePoly f, DensePoly g) {
    detail::same_ring(f, g);
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("poly_gcd: both inputs are zero");
    while (!g.is_zero()) {
        DensePoly r = divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return monic(f);
}

/// Largest m with (x - alpha)^m | f, by repeated synthetic division.
/// nullopt stands for the infinite multiplicity of the zero polynomial.
inline std::optional<std::size_t> root_multiplicity(const DensePoly& f, u64 alpha) {
    if (f.is_zero()) return std::nullopt;
    const u64 p = f.modulus();
    alpha %= p;
    std::vector<u64> c = f.coeffs();
    std::size_t m = 0;
    while (c.size() > 1) {
        // synthetic division of c by (x - alpha)
        std::vector<u64> q(c.size() - 1);
        u64 carry = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            const u64 v = (c[i] + carry) % p;
            if (i == 0) {
                if (v != 0) return m;
            } else {
                q[i - 1] = v;
                carry = detail::mul_mod(v, alpha, p);
            }
        }
        c = std::move(q);
        ++m;
    }
    return m;
}

/// Exact binomial coefficient; zero for k < 0 or k > n.
inline mpz_class binom_exact(long n, long k) {
    if (n < 0) throw std::invalid_argument("binom_exact: n must be non-negative");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    mpz_class acc = 1;
    // acc = C(n - k + i, i) after step i; each division is exact.
    for (long i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return acc;
}

}  // namespace kres

#endif  // KRES_POLYRING_HPP
