#ifndef KRES_HARNESS_HPP
#define KRES_HARNESS_HPP

// Scan drivers: exhaustive checks of the non-residue bound, the run-length bound
// and the common-root lemma over ranges of primes, with JSON/CSV reports.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "fieldcore.hpp"
#include "stepanov.hpp"

namespace kres {

enum class KMode { prime_divisors, all_divisors, fixed };
enum class OutputFormat { json, csv };

struct ScanConfig {
    u64 prime_lo = 5;
    u64 prime_hi = 1000;
    KMode k_mode = KMode::prime_divisors;
    u64 fixed_k = 0;
    std::vector<ApSpec> ap_grid{{1, 1}};
    u64 seed = 0;
    unsigned jobs = 1;
    // scan_lemma only
    unsigned lemma_samples_per_prime = 1;
    u64 lemma_max_t = 400;
};

inline std::string to_string(KMode m) {
    switch (m) {
        case KMode::prime_divisors: return "prime";
        case KMode::all_divisors: return "all";
        case KMode::fixed: return "fixed";
    }
    return "?";
}

inline void validate(const ScanConfig& cfg) {
    if (cfg.prime_lo < 5) throw std::invalid_argument("ScanConfig: prime range lower end must be >= 5");
    if (cfg.prime_hi < cfg.prime_lo) throw std::invalid_argument("ScanConfig: empty prime range");
    if (cfg.prime_hi > kMaxModulus) throw std::invalid_argument("ScanConfig: prime range exceeds 2^61-1");
    if (cfg.ap_grid.empty()) throw std::invalid_argument("ScanConfig: ap_grid must be nonempty");
    for (const auto& ap : cfg.ap_grid)
        if (ap.b < 1) throw std::invalid_argument("ScanConfig: b must be >= 1");
    if (cfg.k_mode == KMode::fixed && cfg.fixed_k < 1) throw std::invalid_argument("ScanConfig: fixed k must be >= 1");
    if (cfg.jobs < 1) throw std::invalid_argument("ScanConfig: jobs must be >= 1");
}

inline nlohmann::ordered_json config_json(const ScanConfig& cfg) {
    nlohmann::ordered_json j;
    j["prime_lo"] = cfg.prime_lo;
    j["prime_hi"] = cfg.prime_hi;
    j["k_mode"] = to_string(cfg.k_mode);
    if (cfg.k_mode == KMode::fixed) j["k"] = cfg.fixed_k;
    auto grid = nlohmann::ordered_json::array();
    for (const auto& ap : cfg.ap_grid) grid.push_back({ap.b, ap.c});
    j["ap_grid"] = grid;
    j["seed"] = cfg.seed;
    return j;
}

inline std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 n = lo; n <= hi; ++n)
        if (detail::is_prime_u64(n)) out.push_back(n);
    return out;
}

inline std::vector<u64> ks_for(const PrimeFieldCtx& ctx, const ScanConfig& cfg) {
    switch (cfg.k_mode) {
        case KMode::prime_divisors: return ctx.prime_divisors_p_minus_1();
        case KMode::all_divisors: {
            auto divs = ctx.divisors_p_minus_1();
            divs.erase(divs.begin());  // k = 1: everything is a residue
            return divs;
        }
        case KMode::fixed:
            if (ctx.divides_p_minus_1(cfg.fixed_k) && cfg.fixed_k >= 2) return {cfg.fixed_k};
            return {};
    }
    return {};
}

/// Runs fn(p) for every prime on `jobs` workers; results come back in prime order
/// whatever the completion order.
template <class Row, class Fn>
std::vector<Row> map_primes(const std::vector<u64>& primes, unsigned jobs, Fn fn) {
    std::vector<std::vector<Row>> per(primes.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < primes.size(); i = next++) {
            try {
                per[i] = fn(primes[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, primes.size()))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<Row> out;
    for (auto& v : per) std::move(v.begin(), v.end(), std::back_inserter(out));
    return out;
}

// ---------------------------------------------------------------------------
// Exact bound arithmetic

/// Smallest y >= 0 with y^2 >= n.
inline u64 ceil_sqrt(u128 n) {
    if (n == 0) return 0;
    u64 y = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<u128>(y) * y < n) ++y;
    while (y > 0 && static_cast<u128>(y - 1) * (y - 1) >= n) --y;
    return y;
}

/// ceil(7/sqrt(5) * b * sqrt(t) + 4b + c), exactly.
inline u64 theorem_bound_ceil(u64 b, u64 c, u64 t) {
    const u128 x = static_cast<u128>(49) * b * b * t;  // 5 y^2 >= x
    return 4 * b + c + ceil_sqrt((x + 4) / 5);
}

/// value <= 7/sqrt(5) * b * sqrt(t) + 4b + c, decided by squaring.
inline bool theorem_bound_holds(u64 value, u64 b, u64 c, u64 t) {
    if (value <= 4 * b + c) return true;
    const u128 y = value - 4 * b - c;
    return 5 * y * y <= static_cast<u128>(49) * b * b * t;
}

/// Run-length bound 7/sqrt(5) * sqrt(t) + 4.
inline u64 corollary_bound_ceil(u64 t) { return theorem_bound_ceil(1, 0, t); }
inline bool corollary_bound_holds(u64 len, u64 t) { return theorem_bound_holds(len, 1, 0, t); }

inline double brauer_bound(u64 p) { return std::sqrt(2.0 * static_cast<double>(p)) + 2.0; }
inline double hudson_bound(u64 p, u64 b) {
    const double pd = static_cast<double>(p), bd = static_cast<double>(b);
    return std::pow(2.0, 11.0 / 4.0) * std::pow(bd, 2.5) * std::pow(pd, 0.4) + 6.0 * bd * bd * bd * std::pow(pd, 0.2) +
           2.0 * bd * bd;
}

// ---------------------------------------------------------------------------
// Rows

struct BoundRow {
    u64 p = 0, k = 0, b = 0, c = 0, t = 0;
    u64 least_index = 0;
    u64 least_value = 0;
    u64 thm_bound = 0;
    double brauer = 0, hudson = 0;
    bool holds = false;
    i64 margin = 0;
    bool beats_brauer = false;  // thm_bound < brauer
    bool beats_hudson = false;
};

struct CorollaryRow {
    u64 p = 0, k = 0, b = 0, c = 0, t = 0;
    u64 residue_run = 0;
    u64 nonresidue_run = 0;
    u64 coset_run = 0;  // longest run of non-residues sharing one coset
    u64 bound = 0;
    bool residue_holds = false;
    bool nonresidue_holds = false;
    bool coset_holds = false;
    bool holds = false;  // residue_holds && nonresidue_holds
};

struct LemmaRow {
    u64 p = 0, k = 0, t = 0, r = 0, effective_r = 0;
    u64 M = 0, s = 0, D = 0, N = 0;
    long deg_F = -1;
    u64 roots = 0;
    u64 count_bound = 0;
    bool multiplicity_ok = false;
    bool count_ok = false;
    bool lemma_ok = false;
    bool r_even = false;
    std::string targets;  // "power" or "random"
    bool holds = false;   // multiplicity_ok && count_ok && (lemma_ok || !r_even)
};

namespace detail {
template <class Row>
void sort_pkbc(std::vector<Row>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        return std::tie(x.p, x.k, x.b, x.c) < std::tie(y.p, y.k, y.b, y.c);
    });
}
}  // namespace detail

inline std::vector<BoundRow> theorem_rows_for_prime(u64 p, const ScanConfig& cfg) {
    const PrimeFieldCtx ctx(p);
    std::vector<BoundRow> rows;
    for (u64 k : ks_for(ctx, cfg)) {
        const ResidueTable table(ctx, k);
        const u64 t = (p - 1) / k;
        for (const auto& ap0 : cfg.ap_grid) {
            if (ap0.b % p == 0 || ap0.b >= p) continue;
            const ApSpec ap = normalize(ctx, ap0);
            BoundRow row;
            row.p = p;
            row.k = k;
            row.b = ap.b;
            row.c = ap.c;
            row.t = t;
            const auto hit = least_nonresidue_in_ap(ctx, table, ap);
            if (!hit) throw std::logic_error("no non-residue in a full period for k >= 2");
            row.least_index = hit->index;
            row.least_value = hit->value;
            row.thm_bound = theorem_bound_ceil(ap.b, ap.c, t);
            row.holds = theorem_bound_holds(row.least_value, ap.b, ap.c, t);
            if (row.holds != (row.least_value <= row.thm_bound)) throw std::logic_error("bound rounding disagrees");
            row.margin = static_cast<i64>(row.thm_bound) - static_cast<i64>(row.least_value);
            row.brauer = brauer_bound(p);
            row.hudson = hudson_bound(p, ap.b);
            row.beats_brauer = static_cast<double>(row.thm_bound) < row.brauer;
            row.beats_hudson = static_cast<double>(row.thm_bound) < row.hudson;
            rows.push_back(row);
        }
    }
    detail::sort_pkbc(rows);
    return rows;
}

/// One row per (p, k, b, c), ordered lexicographically.
inline std::vector<BoundRow> scan_theorem(const ScanConfig& cfg) {
    validate(cfg);
    return map_primes<BoundRow>(primes_in(cfg.prime_lo, cfg.prime_hi), cfg.jobs,
                                [&](u64 p) { return theorem_rows_for_prime(p, cfg); });
}

inline std::vector<CorollaryRow> corollary_rows_for_prime(u64 p, const ScanConfig& cfg) {
    const PrimeFieldCtx ctx(p);
    std::vector<CorollaryRow> rows;
    for (u64 k : ks_for(ctx, cfg)) {
        const ResidueTable table(ctx, k);
        const u64 t = (p - 1) / k;
        for (const auto& ap0 : cfg.ap_grid) {
            if (ap0.b % p == 0 || ap0.b >= p) continue;
            const ApSpec ap = normalize(ctx, ap0);
            CorollaryRow row;
            row.p = p;
            row.k = k;
            row.b = ap.b;
            row.c = ap.c;
            row.t = t;
            row.residue_run = longest_run_in_ap(ctx, table, ap, ResidueClass::residue);
            row.nonresidue_run = longest_run_in_ap(ctx, table, ap, ResidueClass::nonresidue);
            row.coset_run = longest_run_in_ap(ctx, table, ap, ResidueClass::nonresidue, RunKind::same_coset);
            row.bound = corollary_bound_ceil(t);
            row.residue_holds = corollary_bound_holds(row.residue_run, t);
            row.nonresidue_holds = corollary_bound_holds(row.nonresidue_run, t);
            row.coset_holds = corollary_bound_holds(row.coset_run, t);
            row.holds = row.residue_holds && row.nonresidue_holds;
            rows.push_back(row);
        }
    }
    detail::sort_pkbc(rows);
    return rows;
}

inline std::vector<CorollaryRow> scan_corollary(const ScanConfig& cfg) {
    validate(cfg);
    return map_primes<CorollaryRow>(primes_in(cfg.prime_lo, cfg.prime_hi), cfg.jobs,
                                    [&](u64 p) { return corollary_rows_for_prime(p, cfg); });
}

/// Per-prime generator: the stream depends only on (seed, p).
inline std::mt19937_64 rng_for(u64 seed, u64 p) {
    u64 z = seed + 0x9E3779B97F4A7C15ull * (p + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return std::mt19937_64(z ^ (z >> 31));
}

inline u64 uniform(std::mt19937_64& rng, u64 lo, u64 hi) {
    return std::uniform_int_distribution<u64>(lo, hi)(rng);
}

/// A random system with t = (p-1)/k. Shifts are distinct; with structured targets
/// theta_i = (alpha + a_i)^t for one random alpha, so alpha is a common root.
inline SystemSpec random_system(const PrimeFieldCtx& ctx, u64 t, u64 r, bool structured, std::mt19937_64& rng) {
    const u64 p = ctx.p();
    std::vector<u64> shifts;
    if (uniform(rng, 0, 1) == 0) {
        const u64 b = uniform(rng, 1, p - 1);
        const u64 c = uniform(rng, 0, p - 1);
        for (u64 i = 0; i < r; ++i) shifts.push_back(ctx.add(c, ctx.mul(b, i)));
    } else {
        while (shifts.size() < r) {
            const u64 a = uniform(rng, 0, p - 1);
            if (std::find(shifts.begin(), shifts.end(), a) == shifts.end()) shifts.push_back(a);
        }
    }
    std::vector<u64> targets(r);
    if (structured) {
        u64 alpha = 0;
        for (;;) {
            alpha = uniform(rng, 0, p - 1);
            bool ok = true;
            for (u64 a : shifts) ok = ok && ctx.add(alpha, a) != 0;
            if (ok) break;
        }
        for (u64 i = 0; i < r; ++i) targets[i] = ctx.pow(ctx.add(alpha, shifts[i]), t);
    } else {
        for (auto& th : targets) th = uniform(rng, 1, p - 1);
    }
    return SystemSpec(ctx, t, std::move(shifts), std::move(targets));
}

inline std::vector<LemmaRow> lemma_rows_for_prime(u64 p, const ScanConfig& cfg) {
    const PrimeFieldCtx ctx(p);
    auto rng = rng_for(cfg.seed, p);
    std::vector<u64> ks;
    for (u64 k : ks_for(ctx, cfg)) {
        const u64 t = (p - 1) / k;
        if (t >= 1 && t <= cfg.lemma_max_t) ks.push_back(k);
    }
    std::vector<LemmaRow> rows;
    if (ks.empty()) return rows;
    for (unsigned sample = 0; sample < cfg.lemma_samples_per_prime; ++sample) {
        const u64 k = ks[uniform(rng, 0, ks.size() - 1)];
        const u64 t = (p - 1) / k;
        const u64 rmax = max_r_for(t);
        if (rmax < 2) continue;
        const u64 r = uniform(rng, 2, rmax);
        const bool structured = uniform(rng, 0, 1) == 0;
        const SystemSpec spec = random_system(ctx, t, r, structured, rng);
        const LemmaReport rep = verify_lemma_commonsol(spec);
        LemmaRow row;
        row.p = p;
        row.k = k;
        row.t = t;
        row.r = r;
        row.effective_r = rep.effective_r;
        row.M = rep.params.M;
        row.s = rep.params.s;
        row.D = rep.params.D;
        row.N = rep.params.N;
        row.deg_F = rep.deg_F;
        row.roots = rep.roots.size();
        row.count_bound = rep.count_bound;
        row.multiplicity_ok = rep.multiplicity_ok;
        row.count_ok = rep.count_ok;
        row.lemma_ok = rep.lemma_ok;
        row.r_even = rep.r_even;
        row.targets = structured ? "power" : "random";
        row.holds = row.multiplicity_ok && row.count_ok && (row.lemma_ok || !row.r_even);
        rows.push_back(row);
    }
    return rows;
}

/// Randomized common-root checks; `lemma_samples_per_prime` systems per prime.
inline std::vector<LemmaRow> scan_lemma(const ScanConfig& cfg) {
    validate(cfg);
    return map_primes<LemmaRow>(primes_in(cfg.prime_lo, cfg.prime_hi), cfg.jobs,
                                [&](u64 p) { return lemma_rows_for_prime(p, cfg); });
}

// ---------------------------------------------------------------------------
// Reports

struct Report {
    nlohmann::ordered_json config;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    nlohmann::ordered_json summary;
    u64 violations = 0;
};

namespace detail {
inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}
inline std::string b2s(bool v) { return v ? "true" : "false"; }
}  // namespace detail

inline const std::vector<std::string>& theorem_csv_header() {
    static const std::vector<std::string> h{"p",      "k",     "b",      "c",      "t",         "n",
                                            "value",  "bound", "holds",  "margin", "brauer",    "hudson",
                                            "beats_brauer", "beats_hudson"};
    return h;
}

inline Report theorem_report(const ScanConfig& cfg, const std::vector<BoundRow>& rows) {
    Report rep;
    rep.config = config_json(cfg);
    rep.config["scan"] = "theorem";
    rep.csv_header = theorem_csv_header();
    double max_ratio = 0;
    u64 beats_brauer = 0, beats_hudson = 0;
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["p"] = r.p;
        j["k"] = r.k;
        j["b"] = r.b;
        j["c"] = r.c;
        j["t"] = r.t;
        j["n"] = r.least_index;
        j["value"] = r.least_value;
        j["bound"] = r.thm_bound;
        j["holds"] = r.holds;
        j["margin"] = r.margin;
        j["brauer"] = r.brauer;
        j["hudson"] = r.hudson;
        j["beats_brauer"] = r.beats_brauer;
        j["beats_hudson"] = r.beats_hudson;
        rep.rows.push_back(std::move(j));
        rep.csv_rows.push_back({std::to_string(r.p), std::to_string(r.k), std::to_string(r.b), std::to_string(r.c),
                                std::to_string(r.t), std::to_string(r.least_index), std::to_string(r.least_value),
                                std::to_string(r.thm_bound), detail::b2s(r.holds), std::to_string(r.margin),
                                detail::fmt_double(r.brauer), detail::fmt_double(r.hudson),
                                detail::b2s(r.beats_brauer), detail::b2s(r.beats_hudson)});
        if (!r.holds) ++rep.violations;
        max_ratio = std::max(max_ratio, static_cast<double>(r.least_value) / static_cast<double>(r.thm_bound));
        beats_brauer += r.beats_brauer;
        beats_hudson += r.beats_hudson;
    }
    rep.summary["rows"] = rows.size();
    rep.summary["violations"] = rep.violations;
    rep.summary["max_margin_ratio"] = max_ratio;
    rep.summary["rows_beating_brauer"] = beats_brauer;
    rep.summary["rows_beating_hudson"] = beats_hudson;
    return rep;
}

inline Report corollary_report(const ScanConfig& cfg, const std::vector<CorollaryRow>& rows) {
    Report rep;
    rep.config = config_json(cfg);
    rep.config["scan"] = "corollary";
    rep.csv_header = {"p",           "k",     "b",     "c",             "t",
                      "value",       "bound", "holds", "residue_run",   "nonresidue_run",
                      "coset_run",   "residue_holds",  "nonresidue_holds", "coset_holds"};
    double max_ratio = 0;
    u64 res_v = 0, non_v = 0, coset_v = 0;
    for (const auto& r : rows) {
        const u64 value = std::max(r.residue_run, r.nonresidue_run);
        nlohmann::ordered_json j;
        j["p"] = r.p;
        j["k"] = r.k;
        j["b"] = r.b;
        j["c"] = r.c;
        j["t"] = r.t;
        j["value"] = value;
        j["bound"] = r.bound;
        j["holds"] = r.holds;
        j["residue_run"] = r.residue_run;
        j["nonresidue_run"] = r.nonresidue_run;
        j["coset_run"] = r.coset_run;
        j["residue_holds"] = r.residue_holds;
        j["nonresidue_holds"] = r.nonresidue_holds;
        j["coset_holds"] = r.coset_holds;
        rep.rows.push_back(std::move(j));
        rep.csv_rows.push_back({std::to_string(r.p), std::to_string(r.k), std::to_string(r.b), std::to_string(r.c),
                                std::to_string(r.t), std::to_string(value), std::to_string(r.bound),
                                detail::b2s(r.holds), std::to_string(r.residue_run),
                                std::to_string(r.nonresidue_run), std::to_string(r.coset_run),
                                detail::b2s(r.residue_holds), detail::b2s(r.nonresidue_holds),
                                detail::b2s(r.coset_holds)});
        if (!r.holds) ++rep.violations;
        res_v += !r.residue_holds;
        non_v += !r.nonresidue_holds;
        coset_v += !r.coset_holds;
        max_ratio = std::max(max_ratio, static_cast<double>(value) / static_cast<double>(r.bound));
    }
    rep.summary["rows"] = rows.size();
    rep.summary["violations"] = rep.violations;
    rep.summary["max_margin_ratio"] = max_ratio;
    rep.summary["residue_violations"] = res_v;
    rep.summary["nonresidue_violations"] = non_v;
    rep.summary["coset_violations"] = coset_v;
    return rep;
}

inline Report lemma_report(const ScanConfig& cfg, const std::vector<LemmaRow>& rows) {
    Report rep;
    rep.config = config_json(cfg);
    rep.config["scan"] = "lemma";
    rep.config["samples_per_prime"] = cfg.lemma_samples_per_prime;
    rep.config["max_t"] = cfg.lemma_max_t;
    rep.csv_header = {"p", "k", "t", "r", "effective_r", "M", "s", "D", "N", "deg_F", "value", "bound",
                      "holds", "multiplicity_ok", "count_ok", "lemma_ok", "r_even", "targets"};
    double max_tight = 0;
    u64 odd_gap = 0;
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["p"] = r.p;
        j["k"] = r.k;
        j["t"] = r.t;
        j["r"] = r.r;
        j["effective_r"] = r.effective_r;
        j["M"] = r.M;
        j["s"] = r.s;
        j["D"] = r.D;
        j["N"] = r.N;
        j["deg_F"] = r.deg_F;
        j["value"] = r.roots;
        j["bound"] = r.count_bound;
        j["holds"] = r.holds;
        j["multiplicity_ok"] = r.multiplicity_ok;
        j["count_ok"] = r.count_ok;
        j["lemma_ok"] = r.lemma_ok;
        j["r_even"] = r.r_even;
        j["targets"] = r.targets;
        rep.rows.push_back(std::move(j));
        rep.csv_rows.push_back({std::to_string(r.p), std::to_string(r.k), std::to_string(r.t), std::to_string(r.r),
                                std::to_string(r.effective_r), std::to_string(r.M), std::to_string(r.s),
                                std::to_string(r.D), std::to_string(r.N), std::to_string(r.deg_F),
                                std::to_string(r.roots), std::to_string(r.count_bound), detail::b2s(r.holds),
                                detail::b2s(r.multiplicity_ok), detail::b2s(r.count_ok), detail::b2s(r.lemma_ok),
                                detail::b2s(r.r_even), r.targets});
        if (!r.holds) ++rep.violations;
        if (!r.r_even && !r.lemma_ok) ++odd_gap;
        max_tight = std::max(max_tight, static_cast<double>(r.roots) * static_cast<double>(r.r - 1) /
                                            static_cast<double>(r.t));
    }
    rep.summary["rows"] = rows.size();
    rep.summary["violations"] = rep.violations;
    rep.summary["odd_r_lemma_gaps"] = odd_gap;
    rep.summary["max_roots_times_r_minus_1_over_t"] = max_tight;
    return rep;
}

inline std::string render(const Report& rep, OutputFormat fmt) {
    std::ostringstream os;
    if (fmt == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["config"] = rep.config;
        j["rows"] = rep.rows;
        j["summary"] = rep.summary;
        os << j.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < rep.csv_header.size(); ++i) os << (i ? "," : "") << rep.csv_header[i];
        os << '\n';
        for (const auto& row : rep.csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << '\n';
        }
    }
    return os.str();
}

/// Writes to `path`, or to `fallback` when path is empty.
inline void write_output(const std::string& text, const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

/// --jobs, else STEPANOV_JOBS, else 1.
inline unsigned resolve_jobs(std::optional<unsigned> flag) {
    if (flag) return std::max(1u, *flag);
    if (const char* env = std::getenv("STEPANOV_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

}  // namespace kres

#endif  // KRES_HARNESS_HPP
