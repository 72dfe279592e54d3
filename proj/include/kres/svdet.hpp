#ifndef KRES_SVDET_HPP
#define KRES_SVDET_HPP

// Generalized Sylvester-Vandermonde matrices.
//
// Row block i (i = 1..r) holds the coefficient vectors of x^j (x + a_i)^T for
// j = 0..d, so the matrix has D r rows and D + T columns (D = d + 1). Column c
// carries the coefficient of x^c: row (i, j) has C(T, T - q) a_i^(T - q) in
// column j + q for q = 0..T. With D (r - 1) = T the matrix is square and
//
//   det V = C * prod_{i<j} (a_i - a_j)^(D^2),
//   C     = prod_{l=0}^{T+d} C(T+d, l) / prod_{j=0}^{d} C(T+d, j)^r.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact_matrix.hpp"
#include "fieldcore.hpp"
#include "polyring.hpp"

namespace kres {

struct SVMatrixSpec {
    long T = 0;
    long d = 0;
    long r = 0;
    std::vector<mpz_class> points;

    long D() const noexcept { return d + 1; }
    long size() const noexcept { return D() * r; }
};

namespace detail {
inline void check_shape(long T, long d, long r) {
    if (T < 0 || d < 0 || r < 2) throw std::invalid_argument("sv: need T >= 0, d >= 0, r >= 2");
    if ((d + 1) * (r - 1) != T) {
        throw std::invalid_argument("sv: D (r - 1) must equal T (got T=" + std::to_string(T) +
                                    ", d=" + std::to_string(d) + ", r=" + std::to_string(r) + ")");
    }
}
}  // namespace detail

inline void validate(const SVMatrixSpec& spec) {
    detail::check_shape(spec.T, spec.d, spec.r);
    if (static_cast<long>(spec.points.size()) != spec.r) throw std::invalid_argument("sv: need exactly r points");
    for (std::size_t i = 0; i < spec.points.size(); ++i)
        for (std::size_t j = i + 1; j < spec.points.size(); ++j)
            if (spec.points[i] == spec.points[j]) throw std::invalid_argument("sv: points must be distinct");
}

inline IntMatrix build_sv_matrix(const SVMatrixSpec& spec) {
    validate(spec);
    const long D = spec.D(), T = spec.T;
    IntMatrix m(static_cast<std::size_t>(D * spec.r), static_cast<std::size_t>(D + T));
    std::vector<mpz_class> binom(static_cast<std::size_t>(T + 1));
    for (long q = 0; q <= T; ++q) binom[static_cast<std::size_t>(q)] = binom_exact(T, T - q);
    for (long i = 0; i < spec.r; ++i) {
        const mpz_class& a = spec.points[static_cast<std::size_t>(i)];
        // entries C(T, T-q) a^(T-q), q = 0..T
        std::vector<mpz_class> row(static_cast<std::size_t>(T + 1));
        mpz_class apow = 1;
        for (long q = T; q >= 0; --q) {
            row[static_cast<std::size_t>(q)] = binom[static_cast<std::size_t>(q)] * apow;
            apow *= a;
        }
        for (long j = 0; j < D; ++j) {
            for (long q = 0; q <= T; ++q) {
                m(static_cast<std::size_t>(i * D + j), static_cast<std::size_t>(j + q)) = row[static_cast<std::size_t>(q)];
            }
        }
    }
    return m;
}

/// Exact determinant via Bareiss.
inline mpz_class exact_determinant(const IntMatrix& m) { return bareiss_determinant(m); }

/// C = prod_{l=0}^{T+d} C(T+d, l) / prod_{j=0}^{d} C(T+d, j)^r, reduced.
inline mpq_class sv_constant(long T, long d, long r) {
    detail::check_shape(T, d, r);
    mpz_class num = 1, den = 1;
    for (long l = 0; l <= T + d; ++l) num *= binom_exact(T + d, l);
    for (long j = 0; j <= d; ++j) {
        mpz_class b = binom_exact(T + d, j), bp;
        mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(r));
        den *= bp;
    }
    mpq_class c(num, den);
    c.canonicalize();
    return c;
}

/// prod_{i<j} (a_i - a_j)^e
inline mpz_class difference_product(const std::vector<mpz_class>& a, unsigned long e) {
    mpz_class acc = 1, pw;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const mpz_class diff = a[i] - a[j];
            mpz_pow_ui(pw.get_mpz_t(), diff.get_mpz_t(), e);
            acc *= pw;
        }
    }
    return acc;
}

struct SVIdentityReport {
    mpz_class det_value;
    mpq_class predicted;
    mpq_class constant_C;
    bool C_is_integer = false;
    bool match = false;
    std::optional<mpz_class> crt_det;  ///< multi-modular cross-check, when requested
    bool crt_agrees = true;
    std::optional<u64> prime;          ///< prime for the C != 0 mod p check
    std::optional<bool> C_nonzero_mod_p;
};

struct SVVerifyOptions {
    bool crt_cross_check = false;
    std::optional<u64> prime;
};

/// Computes both sides exactly; a mismatch is reported, not thrown.
inline SVIdentityReport verify_sv_identity(const SVMatrixSpec& spec, const SVVerifyOptions& opts = {}) {
    const IntMatrix V = build_sv_matrix(spec);
    SVIdentityReport rep;
    rep.det_value = exact_determinant(V);
    rep.constant_C = sv_constant(spec.T, spec.d, spec.r);
    rep.C_is_integer = rep.constant_C.get_den() == 1;
    const auto D = static_cast<unsigned long>(spec.D());
    rep.predicted = rep.constant_C * mpq_class(difference_product(spec.points, D * D));
    rep.predicted.canonicalize();
    rep.match = rep.predicted.get_den() == 1 && rep.predicted.get_num() == rep.det_value;
    if (opts.crt_cross_check) {
        rep.crt_det = crt_determinant(V);
        rep.crt_agrees = *rep.crt_det == rep.det_value;
    }
    if (opts.prime) {
        rep.prime = opts.prime;
        const mpz_class pz(static_cast<unsigned long>(*opts.prime));
        // numerator nonzero mod p and denominator invertible mod p
        const bool num_ok = mpz_divisible_p(rep.constant_C.get_num_mpz_t(), pz.get_mpz_t()) == 0;
        const bool den_ok = mpz_divisible_p(rep.constant_C.get_den_mpz_t(), pz.get_mpz_t()) == 0;
        rep.C_nonzero_mod_p = num_ok && den_ok;
    }
    return rep;
}

struct HankelReport {
    mpz_class direct;
    mpq_class closed_form;
    bool match = false;
};

/// The (m+1) x (m+1) matrix with entry (u, v) = C(n + m - u, l + m - v).
inline IntMatrix hankel_binom_matrix(long n, long m, long l) {
    IntMatrix h(static_cast<std::size_t>(m + 1), static_cast<std::size_t>(m + 1));
    for (long u = 0; u <= m; ++u)
        for (long v = 0; v <= m; ++v) h(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) = binom_exact(n + m - u, l + m - v);
    return h;
}

/// Direct determinant of the binomial matrix against
/// prod_{j=0}^m C(n+m, l+j) / prod_{j=0}^m C(n+m, j). Requires l + m <= n.
inline HankelReport hankel_binom_det(long n, long m, long l) {
    if (n < 0 || m < 0 || l < 0) throw std::invalid_argument("hankel: n, m, l must be non-negative");
    if (l + m > n) throw std::invalid_argument("hankel: requires l + m <= n");
    HankelReport rep;
    rep.direct = exact_determinant(hankel_binom_matrix(n, m, l));
    mpz_class num = 1, den = 1;
    for (long j = 0; j <= m; ++j) {
        num *= binom_exact(n + m, l + j);
        den *= binom_exact(n + m, j);
    }
    rep.closed_form = mpq_class(num, den);
    rep.closed_form.canonicalize();
    rep.match = rep.closed_form.get_den() == 1 && rep.closed_form.get_num() == rep.direct;
    return rep;
}

/// H_i (1-based i): D x D with entry (u, v) = C(T, T - D(i-1) + u - v).
inline IntMatrix block_matrix_H(long T, long d, long i) {
    const long D = d + 1;
    IntMatrix h(static_cast<std::size_t>(D), static_cast<std::size_t>(D));
    for (long u = 0; u < D; ++u)
        for (long v = 0; v < D; ++v)
            h(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) = binom_exact(T, T - D * (i - 1) + u - v);
    return h;
}

/// prod_{j=0}^d C(T+d, D(i-1) + j) / C(T+d, j)
inline mpq_class block_det_formula(long T, long d, long i) {
    const long D = d + 1;
    mpz_class num = 1, den = 1;
    for (long j = 0; j <= d; ++j) {
        num *= binom_exact(T + d, D * (i - 1) + j);
        den *= binom_exact(T + d, j);
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

struct BlockConstantReport {
    std::vector<mpz_class> direct_dets;    ///< det(H_i) by elimination
    std::vector<mpq_class> formula_dets;   ///< det(H_i) by the closed form
    mpq_class product_of_H_dets;           ///< product of the closed forms
    mpz_class product_direct;
    mpq_class C;
    bool blocks_match = false;    ///< direct == formula for every i
    bool ends_are_one = false;    ///< det(H_1) = det(H_r) = 1
    bool C_is_integer = false;
    bool match = false;           ///< product_of_H_dets == C and product_direct == C
};

inline BlockConstantReport block_constant_check(long T, long d, long r) {
    detail::check_shape(T, d, r);
    BlockConstantReport rep;
    rep.product_of_H_dets = 1;
    rep.product_direct = 1;
    rep.blocks_match = true;
    for (long i = 1; i <= r; ++i) {
        rep.direct_dets.push_back(exact_determinant(block_matrix_H(T, d, i)));
        rep.formula_dets.push_back(block_det_formula(T, d, i));
        if (mpq_class(rep.direct_dets.back()) != rep.formula_dets.back()) rep.blocks_match = false;
        rep.product_of_H_dets *= rep.formula_dets.back();
        rep.product_direct *= rep.direct_dets.back();
    }
    rep.product_of_H_dets.canonicalize();
    rep.C = sv_constant(T, d, r);
    rep.C_is_integer = rep.C.get_den() == 1;
    rep.ends_are_one = rep.direct_dets.front() == 1 && rep.direct_dets.back() == 1;
    rep.match = rep.product_of_H_dets == rep.C && mpq_class(rep.product_direct) == rep.C;
    return rep;
}

struct AlternatingSumReport {
    mpz_class lhs;  ///< sum_{k=0}^m (-1)^k C(m,k) C(s+k, i)
    mpz_class rhs;  ///< (-1)^m C(s, i - m)
    bool match = false;
};

/// The alternating binomial sum used to clear the top row of the Hankel matrix.
inline AlternatingSumReport alternating_binomial_sum(long m, long s, long i) {
    if (m < 0 || s < 0 || i < 0) throw std::invalid_argument("alternating_binomial_sum: arguments must be non-negative");
    AlternatingSumReport rep;
    for (long k = 0; k <= m; ++k) {
        const mpz_class term = binom_exact(m, k) * binom_exact(s + k, i);
        if (k % 2 == 0) rep.lhs += term;
        else rep.lhs -= term;
    }
    rep.rhs = binom_exact(s, i - m);
    if (m % 2 == 1) rep.rhs = -rep.rhs;
    rep.match = rep.lhs == rep.rhs;
    return rep;
}

}  // namespace kres

#endif  // KRES_SVDET_HPP
