#ifndef KRES_MODMATRIX_HPP
#define KRES_MODMATRIX_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fieldcore.hpp"

namespace kres {

/// Row-major dense matrix over F_p.
class ModMatrix {
public:
    ModMatrix(u64 p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    u64 modulus() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    u64& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    u64 operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void swap_rows(std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(a_[r1 * cols_ + c], a_[r2 * cols_ + c]);
    }

    /// Stack `other` below this matrix.
    ModMatrix vstack(const ModMatrix& other) const {
        if (other.cols_ != cols_ || other.p_ != p_) throw std::invalid_argument("vstack: shape mismatch");
        ModMatrix out(p_, rows_ + other.rows_, cols_);
        std::copy(a_.begin(), a_.end(), out.a_.begin());
        std::copy(other.a_.begin(), other.a_.end(), out.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
        return out;
    }

    friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

private:
    u64 p_;
    std::size_t rows_, cols_;
    std::vector<u64> a_;
};

/// Reduced row echelon form plus the pivot column of each nonzero row.
struct Echelon {
    ModMatrix rref;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Gauss-Jordan over F_p. Pivot: first nonzero entry at or below the current row,
/// scanning columns left to right. Deterministic for identical input.
inline Echelon row_reduce(ModMatrix m) {
    const u64 p = m.modulus();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(row, sel);
        const u64 inv = detail::pow_mod(m(row, col), p - 2, p);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = detail::mul_mod(m(row, c), inv, p);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row) continue;
            const u64 f = m(r, col);
            if (f == 0) continue;
            for (std::size_t c = col; c < m.cols(); ++c) {
                const u64 sub = detail::mul_mod(f, m(row, c), p);
                u64& slot = m(r, c);
                slot = slot >= sub ? slot - sub : slot + p - sub;
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return Echelon{std::move(m), std::move(pivots)};
}

inline std::size_t rank(const ModMatrix& m) { return row_reduce(m).rank(); }

/// A nonzero kernel vector: the first free column set to 1, the other free columns 0.
/// nullopt when the kernel is trivial.
inline std::optional<std::vector<u64>> nullspace_vector(const ModMatrix& m) {
    const Echelon e = row_reduce(m);
    const u64 p = m.modulus();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::size_t free_col = m.cols();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    }
    if (free_col == m.cols()) return std::nullopt;
    std::vector<u64> v(m.cols(), 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) {
        const u64 coef = e.rref(r, free_col);
        v[e.pivot_cols[r]] = coef == 0 ? 0 : p - coef;
    }
    return v;
}

/// m * v over F_p.
inline std::vector<u64> apply(const ModMatrix& m, const std::vector<u64>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("apply: dimension mismatch");
    const u64 p = m.modulus();
    std::vector<u64> out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        u64 acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc = (acc + detail::mul_mod(m(r, c), v[c], p)) % p;
        out[r] = acc;
    }
    return out;
}

/// Determinant of a square matrix over F_p.
inline u64 det_mod(ModMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_mod: matrix is not square");
    const u64 p = m.modulus();
    const std::size_t n = m.rows();
    u64 det = 1 % p;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m(sel, col) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            m.swap_rows(sel, col);
            det = det == 0 ? 0 : p - det;
        }
        det = detail::mul_mod(det, m(col, col), p);
        const u64 inv = detail::pow_mod(m(col, col), p - 2, p);
        for (std::size_t r = col + 1; r < n; ++r) {
            const u64 f = detail::mul_mod(m(r, col), inv, p);
            if (f == 0) continue;
            for (std::size_t c = col; c < n; ++c) {
                const u64 sub = detail::mul_mod(f, m(col, c), p);
                u64& slot = m(r, c);
                slot = slot >= sub ? slot - sub : slot + p - sub;
            }
        }
    }
    return det;
}

}  // namespace kres

#endif  // KRES_MODMATRIX_HPP
