#ifndef KRES_STEPANOV_HPP
#define KRES_STEPANOV_HPP

// Auxiliary-polynomial construction bounding the common roots of
//   S = { (x + a_i)^t - theta_i : i = 1..r }.
//
// F(x) = sum_i G_i(x) (x + a_i)^T with deg G_i <= d and T = t + M - 1 + s is
// forced to vanish to order M at every common root of S; since F != 0, the
// number of common roots is at most deg(F) / M.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fieldcore.hpp"
#include "modmatrix.hpp"
#include "polyring.hpp"

namespace kres {

/// Raised when a construction step produces something the argument rules out.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The system S. Shifts are distinct, targets nonzero, r >= 2 and p > 2t.
class SystemSpec {
public:
    SystemSpec(PrimeFieldCtx ctx, u64 t, std::vector<u64> shifts, std::vector<u64> targets)
        : ctx_(std::move(ctx)), t_(t), shifts_(std::move(shifts)), targets_(std::move(targets)) {
        if (t_ == 0) throw std::invalid_argument("SystemSpec: t must be positive");
        if (shifts_.size() != targets_.size()) throw std::invalid_argument("SystemSpec: shifts/targets length mismatch");
        if (shifts_.size() < 2) throw std::invalid_argument("SystemSpec: need r >= 2 members");
        if (ctx_.p() <= 2 * t_) throw std::invalid_argument("SystemSpec: requires p > 2t");
        for (auto& a : shifts_) a = ctx_.reduce(a);
        for (auto& th : targets_) {
            th = ctx_.reduce(th);
            if (th == 0) throw std::invalid_argument("SystemSpec: targets must be nonzero");
        }
        std::vector<u64> sorted = shifts_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("SystemSpec: shifts must be pairwise distinct");
        }
    }

    const PrimeFieldCtx& ctx() const noexcept { return ctx_; }
    u64 p() const noexcept { return ctx_.p(); }
    u64 t() const noexcept { return t_; }
    std::size_t r() const noexcept { return shifts_.size(); }
    const std::vector<u64>& shifts() const noexcept { return shifts_; }
    const std::vector<u64>& targets() const noexcept { return targets_; }

    /// The member (x + a_i)^t - theta_i.
    DensePoly member(std::size_t i) const {
        return shifted_power(p(), shifts_.at(i), t_) - DensePoly::constant(p(), targets_.at(i));
    }

    /// The first `count` members.
    SystemSpec prefix(std::size_t count) const {
        return SystemSpec(ctx_, t_, std::vector<u64>(shifts_.begin(), shifts_.begin() + static_cast<std::ptrdiff_t>(count)),
                          std::vector<u64>(targets_.begin(), targets_.begin() + static_cast<std::ptrdiff_t>(count)));
    }

private:
    PrimeFieldCtx ctx_;
    u64 t_;
    std::vector<u64> shifts_;
    std::vector<u64> targets_;
};

struct StepanovParams {
    u64 t = 0;
    u64 r = 0;
    u64 M = 0;  ///< multiplicity demanded at each common root
    u64 s = 0;  ///< padding making (r - 1) | T
    u64 d = 0;  ///< max degree of each G_i
    u64 D = 0;  ///< d + 1
    u64 T = 0;  ///< t + M - 1 + s
    u64 N = 0;  ///< d + T, degree bound on F

    bool condition3 = false;  ///< M (d + s) + M (M + 1) / 2 < D r: more unknowns than constraints
    bool condition4 = false;  ///< D r = D + t + M + s - 1: the coefficient matrix of F is square
    bool s_at_most_r_minus_2 = false;
    bool feasible = false;
    /// 5 r^2 - 17 r - (4 t - 14) < 0
    bool quadratic_gate = false;
    /// r <= 2/sqrt(5) sqrt(t) + 1, checked as 5 (r - 1)^2 <= 4 t
    bool within_r_bound = false;
    /// When infeasible: largest r' < r for which the parameters are feasible.
    std::optional<u64> fallback_r;

    u64 constraint_rows() const noexcept { return M * (d + s) + M * (M + 1) / 2; }
    u64 unknowns() const noexcept { return D * r; }
};

inline bool within_r_bound(u64 t, u64 r) { return r >= 1 && 5 * (r - 1) * (r - 1) <= 4 * t; }

/// Largest r with 5 (r - 1)^2 <= 4 t.
inline u64 max_r_for(u64 t) {
    u64 r = 1;
    while (within_r_bound(t, r + 1)) ++r;
    return r;
}

namespace detail {
inline StepanovParams derive_params_raw(u64 t, u64 r) {
    StepanovParams P;
    P.t = t;
    P.r = r;
    P.M = (r + 1) / 2;
    const u64 q = t + P.M - 1;
    P.s = q % (r - 1) == 0 ? 0 : (r - 1) - q % (r - 1);
    P.T = q + P.s;
    P.D = P.T / (r - 1);
    P.d = P.D - 1;
    P.N = P.d + P.T;
    P.condition3 = P.constraint_rows() < P.unknowns();
    P.condition4 = P.D * r == P.D + t + P.M + P.s - 1 && P.D * (r - 1) == P.T;
    P.s_at_most_r_minus_2 = P.s + 2 <= r;
    P.feasible = P.condition3 && P.condition4 && P.D >= 1;
    const auto sr = static_cast<__int128>(r), st = static_cast<__int128>(t);
    P.quadratic_gate = 5 * sr * sr - 17 * sr - (4 * st - 14) < 0;
    P.within_r_bound = within_r_bound(t, r);
    return P;
}
}  // namespace detail

/// Derives M = ceil(r/2), s, d, D, T, N and checks both counting conditions.
inline StepanovParams derive_params(long t, long r) {
    if (t <= 0) throw std::invalid_argument("derive_params: t must be positive");
    if (r < 2) throw std::invalid_argument("derive_params: r must be at least 2");
    StepanovParams P = detail::derive_params_raw(static_cast<u64>(t), static_cast<u64>(r));
    if (!P.feasible) {
        for (u64 rr = static_cast<u64>(r) - 1; rr >= 2; --rr) {
            if (detail::derive_params_raw(static_cast<u64>(t), rr).feasible) {
                P.fallback_r = rr;
                break;
            }
        }
    }
    return P;
}

/// Homogeneous linear system whose kernel vectors are the admissible G_i.
/// Column i*D + j is the coefficient of x^j in G_i. Rows come in blocks, one per
/// derivative order l = 0..M-1; block l has d + M + s - l rows, row q of the block
/// being the coefficient of x^q in the reduced F^(l).
struct ConstraintSystem {
    ModMatrix matrix;
    std::vector<std::size_t> block_offsets;  ///< first row of each derivative block
};

inline constexpr std::size_t kDefaultUnknownCap = 20000;

namespace detail {
inline void check_params_for(const SystemSpec& spec, const StepanovParams& P, std::size_t cap) {
    if (!P.feasible) throw std::invalid_argument("constraint system: parameters are infeasible");
    if (P.r != spec.r() || P.t != spec.t()) throw std::invalid_argument("constraint system: params do not match spec");
    if (P.unknowns() > cap) {
        throw std::length_error("constraint system: " + std::to_string(P.unknowns()) + " unknowns exceeds cap " +
                                std::to_string(cap));
    }
    if (!P.s_at_most_r_minus_2) throw ConstructionError("padding s exceeds r - 2");
}
}  // namespace detail

/// Builds the constraints by differentiating each basis term x^j (x + a_i)^T
/// directly. Written in u = x + a_i the term is (u - a_i)^j u^T; it is
/// differentiated l times, every u^e with e >= t is rewritten to theta_i u^(e-t)
/// (valid at any common root), and the result is mapped back to powers of x.
inline ConstraintSystem build_constraint_system(const SystemSpec& spec, const StepanovParams& P,
                                                std::size_t unknown_cap = kDefaultUnknownCap) {
    detail::check_params_for(spec, P, unknown_cap);
    const u64 p = spec.p();
    const std::size_t r = spec.r();
    const std::size_t D = P.D;

    ConstraintSystem sys{ModMatrix(p, P.constraint_rows(), P.unknowns()), {}};
    std::size_t offset = 0;
    for (u64 l = 0; l < P.M; ++l) {
        sys.block_offsets.push_back(offset);
        offset += P.d + P.M + P.s - l;
    }

    for (std::size_t i = 0; i < r; ++i) {
        const u64 a = spec.shifts()[i];
        const u64 theta = spec.targets()[i];
        for (std::size_t j = 0; j < D; ++j) {
            // (u - a)^j u^T in powers of u
            DensePoly term = shift_up(shifted_power(p, p - a == p ? 0 : p - a, j), P.T);
            for (u64 l = 0; l < P.M; ++l) {
                if (l > 0) term = formal_derivative(term);
                std::vector<u64> reduced;
                for (std::size_t e = 0; e < term.coeffs().size(); ++e) {
                    const u64 c = term.coeffs()[e];
                    if (c == 0) continue;
                    if (e < spec.t()) throw ConstructionError("derivative term fell below exponent t");
                    const std::size_t e2 = e - spec.t();
                    if (e2 >= spec.t()) throw ConstructionError("rewrite (x+a)^t -> theta needed twice");
                    if (reduced.size() <= e2) reduced.resize(e2 + 1, 0);
                    reduced[e2] = (reduced[e2] + detail::mul_mod(c, theta, p)) % p;
                }
                const DensePoly in_x = taylor_shift(DensePoly(p, std::move(reduced)), a);
                const std::size_t block_rows = P.d + P.M + P.s - l;
                if (in_x.degree() >= static_cast<long>(block_rows)) {
                    throw ConstructionError("reduced derivative exceeds its degree budget");
                }
                for (std::size_t q = 0; q < in_x.coeffs().size(); ++q) {
                    sys.matrix(sys.block_offsets[l] + q, i * D + j) = in_x.coeffs()[q];
                }
            }
        }
    }
    return sys;
}

/// The same rows read off the displayed derivative formula with its constant
/// c_j(T) = T (T-1) ... (T - (l-j) + 1) and no Leibniz binomial C(l, j).
/// Diagnostic only.
inline ConstraintSystem build_literal_formula_system(const SystemSpec& spec, const StepanovParams& P,
                                                     std::size_t unknown_cap = kDefaultUnknownCap) {
    detail::check_params_for(spec, P, unknown_cap);
    const u64 p = spec.p();
    const std::size_t D = P.D;
    ConstraintSystem sys{ModMatrix(p, P.constraint_rows(), P.unknowns()), {}};
    std::size_t offset = 0;
    for (u64 l = 0; l < P.M; ++l) {
        sys.block_offsets.push_back(offset);
        offset += P.d + P.M + P.s - l;
    }
    for (std::size_t i = 0; i < spec.r(); ++i) {
        const u64 a = spec.shifts()[i];
        const u64 theta = spec.targets()[i];
        for (std::size_t jj = 0; jj < D; ++jj) {
            for (u64 l = 0; l < P.M; ++l) {
                DensePoly acc(p);
                for (u64 j = 0; j <= std::min<u64>(l, jj); ++j) {
                    u64 c = theta;
                    for (u64 k = 0; k < l - j; ++k) c = detail::mul_mod(c, (P.T - k) % p, p);
                    for (u64 k = 0; k < j; ++k) c = detail::mul_mod(c, (jj - k) % p, p);  // d^j/dx^j x^jj
                    const u64 e = P.M - 1 + P.s - (l - j);
                    acc = acc + scalar_mul(shift_up(shifted_power(p, a, e), jj - j), c);
                }
                for (std::size_t q = 0; q < acc.coeffs().size(); ++q) {
                    sys.matrix(sys.block_offsets[l] + q, i * D + jj) = acc.coeffs()[q];
                }
            }
        }
    }
    return sys;
}

struct RowSpaceComparison {
    std::size_t rank_derived = 0;
    std::size_t rank_literal = 0;
    std::size_t rank_union = 0;
    bool same() const noexcept { return rank_derived == rank_literal && rank_literal == rank_union; }
};

/// Whether the literal-formula rows span the same space as the derived rows.
inline RowSpaceComparison compare_with_literal_formula(const SystemSpec& spec, const StepanovParams& P) {
    const ModMatrix a = build_constraint_system(spec, P).matrix;
    const ModMatrix b = build_literal_formula_system(spec, P).matrix;
    return {rank(a), rank(b), rank(a.vstack(b))};
}

struct AuxiliaryPolynomial {
    std::size_t r = 0;
    std::size_t D = 0;
    std::vector<u64> g_coeffs;  ///< r x D, row-major: g_coeffs[i*D + j] = coefficient of x^j in G_i
    DensePoly F;

    DensePoly G(std::size_t i) const {
        return DensePoly(F.modulus(), std::vector<u64>(g_coeffs.begin() + static_cast<std::ptrdiff_t>(i * D),
                                                       g_coeffs.begin() + static_cast<std::ptrdiff_t>((i + 1) * D)));
    }
};

/// F = sum_i G_i (x + a_i)^T for the given coefficient vector.
inline DensePoly assemble_F(const SystemSpec& spec, const StepanovParams& P, const std::vector<u64>& g_coeffs) {
    const u64 p = spec.p();
    DensePoly F(p);
    for (std::size_t i = 0; i < spec.r(); ++i) {
        DensePoly Gi(p, std::vector<u64>(g_coeffs.begin() + static_cast<std::ptrdiff_t>(i * P.D),
                                         g_coeffs.begin() + static_cast<std::ptrdiff_t>((i + 1) * P.D)));
        if (Gi.is_zero()) continue;
        F = F + Gi * shifted_power(p, spec.shifts()[i], P.T);
    }
    return F;
}

/// Solves the constraint system for a nonzero kernel vector and assembles F.
inline AuxiliaryPolynomial solve_auxiliary(const SystemSpec& spec, const StepanovParams& P) {
    const ConstraintSystem sys = build_constraint_system(spec, P);
    auto v = nullspace_vector(sys.matrix);
    if (!v) throw ConstructionError("nullspace empty: constraint count reached the unknown count");
    AuxiliaryPolynomial aux{spec.r(), P.D, std::move(*v), DensePoly(spec.p())};
    aux.F = assemble_F(spec, P, aux.g_coeffs);
    if (aux.F.is_zero()) throw ConstructionError("F vanished for a nonzero choice of G_i");
    if (aux.F.degree() > static_cast<long>(P.N)) throw ConstructionError("deg F exceeds N");
    return aux;
}

/// Common roots of S: gcd of all members, then exhaustive evaluation of the gcd.
inline std::vector<u64> common_roots_oracle(const SystemSpec& spec) {
    DensePoly g = spec.member(0);
    for (std::size_t i = 1; i < spec.r() && g.degree() > 0; ++i) g = poly_gcd(g, spec.member(i));
    std::vector<u64> roots;
    if (g.degree() <= 0) return roots;
    for (u64 alpha = 0; alpha < spec.p() && roots.size() < static_cast<std::size_t>(g.degree()); ++alpha) {
        if (g.eval(alpha) == 0) roots.push_back(alpha);
    }
    if (roots.size() != static_cast<std::size_t>(g.degree())) {
        throw ConstructionError("gcd degree differs from its root count; a member is not squarefree");
    }
    return roots;
}

struct LemmaReport {
    StepanovParams params;      ///< parameters actually used (after any fallback)
    std::size_t requested_r = 0;
    std::size_t effective_r = 0;  ///< members used to build F; a prefix of the system when params fell back
    std::vector<u64> roots;       ///< common roots of the full system
    long deg_F = -1;
    std::vector<std::size_t> multiplicities;  ///< of F at each root
    bool multiplicity_ok = false;             ///< every root has multiplicity >= M
    u64 count_bound = 0;                      ///< floor(deg F / M)
    bool count_ok = false;                    ///< |roots| <= count_bound
    bool N_over_M_within_lemma = false;       ///< floor(N / M) <= 2t/(r-1) + 3
    bool lemma_ok = false;                    ///< |roots| <= 2t/(r-1) + 3
    bool r_even = false;
    bool passed() const noexcept { return multiplicity_ok && count_ok && lemma_ok; }
};

/// |roots| (r-1) <= 2t + 3(r-1)
inline bool within_lemma_bound(u64 count, u64 t, u64 r) { return count * (r - 1) <= 2 * t + 3 * (r - 1); }

/// Builds F for S and checks the vanishing multiplicity and both root-count bounds
/// against the exact common-root set.
inline LemmaReport verify_lemma_commonsol(const SystemSpec& spec) {
    if (!within_r_bound(spec.t(), spec.r())) {
        throw std::invalid_argument("verify_lemma_commonsol: requires r <= 2/sqrt(5) sqrt(t) + 1");
    }
    LemmaReport rep;
    rep.requested_r = spec.r();
    StepanovParams P = derive_params(static_cast<long>(spec.t()), static_cast<long>(spec.r()));
    if (!P.feasible) {
        if (!P.fallback_r) throw ConstructionError("no feasible r");
        P = derive_params(static_cast<long>(spec.t()), static_cast<long>(*P.fallback_r));
    }
    rep.params = P;
    rep.effective_r = P.r;
    const SystemSpec used = P.r == spec.r() ? spec : spec.prefix(P.r);
    const AuxiliaryPolynomial aux = solve_auxiliary(used, P);
    rep.roots = common_roots_oracle(spec);
    rep.deg_F = aux.F.degree();
    rep.multiplicity_ok = true;
    for (u64 alpha : rep.roots) {
        const std::size_t m = root_multiplicity(aux.F, alpha).value();
        rep.multiplicities.push_back(m);
        if (m < P.M) rep.multiplicity_ok = false;
    }
    rep.count_bound = static_cast<u64>(rep.deg_F) / P.M;
    rep.count_ok = rep.roots.size() <= rep.count_bound;
    rep.N_over_M_within_lemma = within_lemma_bound(P.N / P.M, P.t, P.r);
    rep.lemma_ok = within_lemma_bound(rep.roots.size(), spec.t(), P.r);
    rep.r_even = spec.r() % 2 == 0;
    return rep;
}

}  // namespace kres

#endif  // KRES_STEPANOV_HPP
