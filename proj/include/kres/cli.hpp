#ifndef KRES_CLI_HPP
#define KRES_CLI_HPP

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fieldcore.hpp"
#include "harness.hpp"
#include "stepanov.hpp"
#include "svdet.hpp"

namespace kres {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFalsified = 1, kExitUsage = 2 };

namespace cli_detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

inline u64 parse_u64(const std::string& s, const char* what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid ") + what + ": '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument(std::string("invalid ") + what + ": '" + s + "'");
    return v;
}

inline std::vector<u64> parse_u64_list(const std::string& s, const char* what) {
    std::vector<u64> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_u64(part, what));
    if (out.empty()) throw std::invalid_argument(std::string("empty list for ") + what);
    return out;
}

inline std::vector<mpz_class> parse_int_list(const std::string& s, const char* what) {
    std::vector<mpz_class> out;
    for (const auto& part : split(s, ',')) {
        mpz_class v;
        if (v.set_str(part, 10) != 0) throw std::invalid_argument(std::string("invalid ") + what + ": '" + part + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty list for ") + what);
    return out;
}

/// "lo..hi"
inline std::pair<u64, u64> parse_range(const std::string& s) {
    const auto pos = s.find("..");
    if (pos == std::string::npos) throw std::invalid_argument("prime range must look like LO..HI: '" + s + "'");
    return {parse_u64(s.substr(0, pos), "range"), parse_u64(s.substr(pos + 2), "range")};
}

inline void apply_k(ScanConfig& cfg, const std::string& k) {
    if (k == "all") cfg.k_mode = KMode::all_divisors;
    else if (k == "prime") cfg.k_mode = KMode::prime_divisors;
    else {
        cfg.k_mode = KMode::fixed;
        cfg.fixed_k = parse_u64(k, "k");
    }
}

inline std::string scalar_to_csv(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + scalar_to_csv(v[i]);
        return s;
    }
    return v.dump();
}

/// A single flat record as JSON or as a two-line CSV.
inline std::string render_record(const nlohmann::ordered_json& rec, OutputFormat fmt) {
    if (fmt == OutputFormat::json) return rec.dump(2) + "\n";
    std::string head, body;
    bool first = true;
    for (auto it = rec.begin(); it != rec.end(); ++it) {
        head += (first ? "" : ",") + it.key();
        body += (first ? "" : ",") + scalar_to_csv(it.value());
        first = false;
    }
    return head + "\n" + body + "\n";
}

inline std::string str(const mpz_class& v) { return v.get_str(); }
inline std::string str(const mpq_class& v) { return v.get_str(); }

}  // namespace cli_detail

/// Entry point of the `kres` tool. Returns 0 on success, 1 when a checked claim is
/// falsified, 2 on usage errors.
inline int cli_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
    using namespace cli_detail;
    CLI::App app{"Exact checks for least k-th power non-residues and the polynomial method behind their bound"};
    app.require_subcommand(1);
    app.fallthrough();

    u64 seed = 0;
    std::optional<unsigned> jobs;
    std::string format = "json";
    std::string out_path;
    app.add_option("--seed", seed, "RNG seed for randomized scans");
    app.add_option("--jobs", jobs, "Worker threads (falls back to STEPANOV_JOBS, then 1)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Output file (default: stdout)");

    // residue
    u64 p = 0, k = 0, a = 0, b = 1, c = 1;
    auto* residue = app.add_subcommand("residue", "Is a a k-th power residue mod p?");
    residue->add_option("--p", p, "Prime modulus")->required();
    residue->add_option("--k", k, "Exponent, k | p-1")->required();
    residue->add_option("--a", a, "Element, 1 <= a < p")->required();

    auto* least = app.add_subcommand("least-nonresidue", "Least k-th power non-residue in {b n + c}");
    least->add_option("--p", p, "Prime modulus")->required();
    least->add_option("--k", k, "Exponent, k | p-1, k >= 2")->required();
    least->add_option("--b", b, "Step");
    least->add_option("--c", c, "Offset");

    std::string primes = "5..1000", kspec = "prime", bs = "1", cs = "1";
    unsigned samples = 1;
    u64 max_t = 400;
    auto add_scan_opts = [&](CLI::App* sc) {
        sc->add_option("--primes", primes, "Prime range LO..HI");
        sc->add_option("--k", kspec, "all | prime | <integer>");
        sc->add_option("--b", bs, "Comma-separated steps");
        sc->add_option("--c", cs, "Comma-separated offsets");
    };
    auto* scan_thm = app.add_subcommand("scan-theorem", "Least non-residue vs its bound over a prime range");
    add_scan_opts(scan_thm);
    auto* scan_cor = app.add_subcommand("scan-corollary", "Longest residue / non-residue runs vs their bound");
    add_scan_opts(scan_cor);
    auto* scan_lem = app.add_subcommand("scan-lemma", "Randomized common-root checks of the auxiliary polynomial");
    add_scan_opts(scan_lem);
    scan_lem->add_option("--samples", samples, "Systems per prime");
    scan_lem->add_option("--max-t", max_t, "Largest t = (p-1)/k sampled");

    u64 t = 0, r = 0;
    std::string shifts_s, targets_s;
    bool diagnose = false;
    auto* build = app.add_subcommand("stepanov-build", "Construct the auxiliary polynomial for one system");
    build->add_option("--p", p, "Prime modulus")->required();
    build->add_option("--t", t, "Exponent t, p > 2t")->required();
    build->add_option("--shifts", shifts_s, "Comma-separated distinct shifts a_i");
    build->add_option("--targets", targets_s, "Comma-separated nonzero targets theta_i (default all 1)");
    build->add_option("--r", r, "Use shifts 0..r-1 when --shifts is absent");
    build->add_flag("--diagnose-formula", diagnose, "Compare against the literal derivative formula rows");

    long T = 0, d = 0, rr = 0, n = 0, m = 0, l = 0;
    std::string points_s;
    std::optional<u64> check_prime;
    bool crt = false;
    auto* sv = app.add_subcommand("sv-verify", "Check det V = C prod (a_i - a_j)^(D^2) exactly");
    sv->add_option("--T", T, "Row exponent")->required();
    sv->add_option("--d", d, "Shift range, D = d + 1")->required();
    sv->add_option("--r", rr, "Number of blocks")->required();
    sv->add_option("--points", points_s, "Comma-separated distinct integers")->required()->allow_extra_args(false);
    sv->add_option("--prime", check_prime, "Also report whether C != 0 mod this prime");
    sv->add_flag("--crt", crt, "Cross-check the determinant multi-modularly");

    auto* hankel = app.add_subcommand("hankel", "Binomial Hankel determinant vs its closed form");
    hankel->add_option("--n", n)->required();
    hankel->add_option("--m", m)->required();
    hankel->add_option("--l", l)->required();

    auto* block = app.add_subcommand("block-constant", "Product of diagonal-block determinants vs C");
    block->add_option("--T", T)->required();
    block->add_option("--d", d)->required();
    block->add_option("--r", rr)->required();

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    const OutputFormat fmt = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    try {
        auto emit = [&](const std::string& text) { write_output(text, out_path, out); };

        if (residue->parsed()) {
            const PrimeFieldCtx ctx(p);
            nlohmann::ordered_json rec;
            rec["p"] = p;
            rec["k"] = k;
            rec["a"] = a;
            rec["residue"] = is_kth_residue(a, k, ctx);
            emit(render_record(rec, fmt));
            return kExitOk;
        }
        if (least->parsed()) {
            const PrimeFieldCtx ctx(p);
            if (k < 2) throw std::invalid_argument("least-nonresidue: k must be >= 2");
            const ApSpec ap = normalize(ctx, {b, c});
            const auto hit = least_nonresidue_in_ap(ctx, k, ap);
            nlohmann::ordered_json rec;
            rec["p"] = p;
            rec["k"] = k;
            rec["b"] = ap.b;
            rec["c"] = ap.c;
            rec["t"] = (p - 1) / k;
            if (!hit) {
                rec["found"] = false;
                emit(render_record(rec, fmt));
                return kExitFalsified;
            }
            const u64 bound = theorem_bound_ceil(ap.b, ap.c, (p - 1) / k);
            const bool holds = theorem_bound_holds(hit->value, ap.b, ap.c, (p - 1) / k);
            rec["found"] = true;
            rec["n"] = hit->index;
            rec["value"] = hit->value;
            rec["bound"] = bound;
            rec["holds"] = holds;
            emit(render_record(rec, fmt));
            return holds ? kExitOk : kExitFalsified;
        }
        if (scan_thm->parsed() || scan_cor->parsed() || scan_lem->parsed()) {
            ScanConfig cfg;
            std::tie(cfg.prime_lo, cfg.prime_hi) = parse_range(primes);
            apply_k(cfg, kspec);
            cfg.ap_grid.clear();
            for (u64 bb : parse_u64_list(bs, "b"))
                for (u64 cc : parse_u64_list(cs, "c")) cfg.ap_grid.push_back({bb, cc});
            cfg.seed = seed;
            cfg.jobs = resolve_jobs(jobs);
            cfg.lemma_samples_per_prime = samples;
            cfg.lemma_max_t = max_t;
            Report rep;
            if (scan_thm->parsed()) rep = theorem_report(cfg, scan_theorem(cfg));
            else if (scan_cor->parsed()) rep = corollary_report(cfg, scan_corollary(cfg));
            else rep = lemma_report(cfg, scan_lemma(cfg));
            emit(render(rep, fmt));
            return rep.violations == 0 ? kExitOk : kExitFalsified;
        }
        if (build->parsed()) {
            const PrimeFieldCtx ctx(p);
            std::vector<u64> shifts;
            if (!shifts_s.empty()) shifts = parse_u64_list(shifts_s, "shift");
            else {
                if (r < 2) throw std::invalid_argument("stepanov-build: give --shifts or --r >= 2");
                for (u64 i = 0; i < r; ++i) shifts.push_back(i);
            }
            std::vector<u64> targets = targets_s.empty() ? std::vector<u64>(shifts.size(), 1)
                                                         : parse_u64_list(targets_s, "target");
            const SystemSpec spec(ctx, t, shifts, targets);
            StepanovParams P = derive_params(static_cast<long>(t), static_cast<long>(spec.r()));
            nlohmann::ordered_json rec;
            rec["p"] = p;
            rec["t"] = t;
            rec["r"] = spec.r();
            rec["within_r_bound"] = P.within_r_bound;
            bool ok = true;
            if (P.within_r_bound) {
                const LemmaReport rep = verify_lemma_commonsol(spec);
                P = rep.params;
                rec["effective_r"] = rep.effective_r;
                rec["M"] = P.M;
                rec["s"] = P.s;
                rec["d"] = P.d;
                rec["D"] = P.D;
                rec["T"] = P.T;
                rec["N"] = P.N;
                rec["deg_F"] = rep.deg_F;
                rec["roots"] = rep.roots;
                rec["multiplicities"] = rep.multiplicities;
                rec["count_bound"] = rep.count_bound;
                rec["multiplicity_ok"] = rep.multiplicity_ok;
                rec["count_ok"] = rep.count_ok;
                rec["lemma_ok"] = rep.lemma_ok;
                ok = rep.multiplicity_ok && rep.count_ok && (rep.lemma_ok || !rep.r_even);
            } else {
                if (!P.feasible) throw std::invalid_argument("stepanov-build: parameters infeasible for this r");
                const AuxiliaryPolynomial aux = solve_auxiliary(spec, P);
                const auto roots = common_roots_oracle(spec);
                std::vector<std::size_t> mults;
                bool mult_ok = true;
                for (u64 alpha : roots) {
                    mults.push_back(root_multiplicity(aux.F, alpha).value());
                    mult_ok = mult_ok && mults.back() >= P.M;
                }
                rec["M"] = P.M;
                rec["s"] = P.s;
                rec["d"] = P.d;
                rec["D"] = P.D;
                rec["T"] = P.T;
                rec["N"] = P.N;
                rec["deg_F"] = aux.F.degree();
                rec["roots"] = roots;
                rec["multiplicities"] = mults;
                rec["count_bound"] = static_cast<u64>(aux.F.degree()) / P.M;
                rec["multiplicity_ok"] = mult_ok;
                rec["count_ok"] = roots.size() <= static_cast<u64>(aux.F.degree()) / P.M;
                ok = mult_ok && roots.size() <= static_cast<u64>(aux.F.degree()) / P.M;
            }
            if (diagnose) {
                const auto cmp = compare_with_literal_formula(spec.r() == P.r ? spec : spec.prefix(P.r), P);
                rec["rank_derived"] = cmp.rank_derived;
                rec["rank_literal_formula"] = cmp.rank_literal;
                rec["rank_union"] = cmp.rank_union;
                rec["literal_formula_same_row_space"] = cmp.same();
            }
            rec["passed"] = ok;
            emit(render_record(rec, fmt));
            return ok ? kExitOk : kExitFalsified;
        }
        if (sv->parsed()) {
            SVMatrixSpec spec{T, d, rr, parse_int_list(points_s, "point")};
            const auto rep = verify_sv_identity(spec, {crt, check_prime});
            nlohmann::ordered_json rec;
            rec["T"] = T;
            rec["d"] = d;
            rec["r"] = rr;
            std::vector<std::string> pts;
            for (const auto& pt : spec.points) pts.push_back(str(pt));
            rec["points"] = pts;
            rec["det"] = str(rep.det_value);
            rec["predicted"] = str(rep.predicted);
            rec["C"] = str(rep.constant_C);
            rec["C_is_integer"] = rep.C_is_integer;
            rec["match"] = rep.match;
            if (rep.crt_det) {
                rec["crt_det"] = str(*rep.crt_det);
                rec["crt_agrees"] = rep.crt_agrees;
            }
            if (rep.C_nonzero_mod_p) {
                rec["prime"] = *rep.prime;
                rec["C_nonzero_mod_p"] = *rep.C_nonzero_mod_p;
            }
            emit(render_record(rec, fmt));
            return rep.match && rep.crt_agrees ? kExitOk : kExitFalsified;
        }
        if (hankel->parsed()) {
            const auto rep = hankel_binom_det(n, m, l);
            nlohmann::ordered_json rec;
            rec["n"] = n;
            rec["m"] = m;
            rec["l"] = l;
            rec["direct"] = str(rep.direct);
            rec["closed_form"] = str(rep.closed_form);
            rec["match"] = rep.match;
            emit(render_record(rec, fmt));
            return rep.match ? kExitOk : kExitFalsified;
        }
        if (block->parsed()) {
            const auto rep = block_constant_check(T, d, rr);
            nlohmann::ordered_json rec;
            rec["T"] = T;
            rec["d"] = d;
            rec["r"] = rr;
            std::vector<std::string> direct, formula;
            for (const auto& v : rep.direct_dets) direct.push_back(str(v));
            for (const auto& v : rep.formula_dets) formula.push_back(str(v));
            rec["H_dets_direct"] = direct;
            rec["H_dets_formula"] = formula;
            rec["product_of_H_dets"] = str(rep.product_of_H_dets);
            rec["C"] = str(rep.C);
            rec["C_is_integer"] = rep.C_is_integer;
            rec["blocks_match"] = rep.blocks_match;
            rec["ends_are_one"] = rep.ends_are_one;
            rec["match"] = rep.match;
            emit(render_record(rec, fmt));
            return rep.match && rep.blocks_match && rep.ends_are_one ? kExitOk : kExitFalsified;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConstructionError& e) {
        err << "falsified: " << e.what() << "\n";
        return kExitFalsified;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace kres

#endif  // KRES_CLI_HPP
