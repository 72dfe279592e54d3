#ifndef KRES_EXACT_MATRIX_HPP
#define KRES_EXACT_MATRIX_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fieldcore.hpp"
#include "modmatrix.hpp"

namespace kres {

/// Row-major dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
            for (long v : row) a_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    mpz_class& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void swap_rows(std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t c = 0; c < cols_; ++c) mpz_swap(a_[r1 * cols_ + c].get_mpz_t(), a_[r2 * cols_ + c].get_mpz_t());
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

/// Fraction-free (Bareiss) elimination. Every division is exact; a zero pivot is
/// replaced by the first nonzero entry below it, flipping the sign.
inline mpz_class bareiss_determinant(IntMatrix m) {
    if (!m.is_square()) throw std::invalid_argument("bareiss_determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    mpz_class tmp;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t sel = k + 1;
            while (sel < n && m(sel, k) == 0) ++sel;
            if (sel == n) return 0;
            m.swap_rows(k, sel);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // m(i,j) = (m(i,j) m(k,k) - m(i,k) m(k,j)) / prev
                tmp = m(i, j) * m(k, k);
                tmp -= m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    mpz_class det = m(n - 1, n - 1);
    return sign < 0 ? mpz_class(-det) : det;
}

namespace detail {

// Primes just below 2^61, descending; cached per thread.
inline u64 nth_crt_prime(std::size_t i) {
    static thread_local std::vector<u64> primes;
    u64 cand = primes.empty() ? kMaxModulus : primes.back() - 2;
    while (primes.size() <= i) {
        while (!is_prime_u64(cand)) cand -= 2;
        primes.push_back(cand);
        cand -= 2;
    }
    return primes[i];
}

static_assert(sizeof(unsigned long) == sizeof(u64), "GMP ui functions must take 64-bit operands");

/// Non-negative residue of v modulo p.
inline u64 mpz_mod_u64(const mpz_class& v, u64 p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }

}  // namespace detail

/// Multi-modular determinant: det mod enough 61-bit primes to exceed twice the
/// Hadamard bound, combined by CRT into the symmetric range. Independent of Bareiss.
inline mpz_class crt_determinant(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("crt_determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Hadamard: |det|^2 <= prod of squared row norms.
    mpz_class h2 = 1;
    for (std::size_t r = 0; r < n; ++r) {
        mpz_class norm2 = 0;
        for (std::size_t c = 0; c < n; ++c) norm2 += m(r, c) * m(r, c);
        h2 *= norm2;
    }
    if (h2 == 0) return 0;
    mpz_class bound;  // ceil(sqrt(h2))
    mpz_sqrt(bound.get_mpz_t(), h2.get_mpz_t());
    if (bound * bound < h2) bound += 1;
    const mpz_class needed = 2 * bound + 1;

    mpz_class modulus = 1, residue = 0;
    for (std::size_t i = 0; modulus < needed; ++i) {
        const u64 q = detail::nth_crt_prime(i);
        ModMatrix mm(q, n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) mm(r, c) = detail::mpz_mod_u64(m(r, c), q);
        const u64 dq = det_mod(std::move(mm));
        // residue += modulus * ((dq - residue) * modulus^{-1} mod q)
        const u64 rq = detail::mpz_mod_u64(residue, q);
        const u64 mq = detail::mpz_mod_u64(modulus, q);
        const u64 diff = dq >= rq ? dq - rq : dq + q - rq;
        const u64 lift = detail::mul_mod(diff, detail::pow_mod(mq, q - 2, q), q);
        residue += modulus * mpz_class(static_cast<unsigned long>(lift));
        modulus *= mpz_class(static_cast<unsigned long>(q));
    }
    if (2 * residue > modulus) residue -= modulus;
    return residue;
}

}  // namespace kres

#endif  // KRES_EXACT_MATRIX_HPP
