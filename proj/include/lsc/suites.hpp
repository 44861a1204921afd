#pragma once

// Seeded property suites over randomly generated corpora. Each suite is a
// deterministic function of its configuration, so reports are reproducible
// byte for byte. The same suites back the `check` command and the
// acceptance run.

#include <functional>
#include <string>
#include <vector>

#include "lsc/analysis.hpp"
#include "lsc/beta.hpp"
#include "lsc/engine.hpp"
#include "lsc/generate.hpp"
#include "lsc/syntax.hpp"
#include "lsc/unfold.hpp"

namespace lsc {

struct SuiteConfig {
    std::uint64_t seed = 7;
    std::size_t cases = 100;
    std::size_t max_size = 40;
    std::size_t fuel = 200;
    std::size_t unfold_cap = 100000;
};

struct SuiteFailure {
    std::size_t index;
    std::string message;
};

struct SuiteReport {
    std::string name;
    std::size_t cases_run = 0;
    std::size_t skipped = 0;
    std::vector<SuiteFailure> failures;

    bool pass() const { return failures.empty(); }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "projection",      "normal-form",  "subterm",        "trace",
        "syntactic-bound", "quadratic",    "useful-oracle",  "compact-analysis",
        "compact-equal",   "order-totality", "unfold-decomposition"};
    return names;
}

namespace detail {

inline Rng case_rng(const SuiteConfig& cfg, std::size_t index) {
    return Rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

// Leftmost-outermost beta normalization with a size guard so that
// size-exploding corpus terms are skipped instead of eating all memory.
inline std::optional<BetaRun> guarded_lo_beta(const TermPtr& t, std::size_t fuel,
                                              std::size_t size_guard) {
    BetaRun run{t, 0, false};
    while (true) {
        auto next = step_lo_beta(run.result);
        if (!next) return run;
        if (run.steps == fuel) return std::nullopt;
        run.result = *next;
        ++run.steps;
        if (measure(run.result).size > size_guard) return std::nullopt;
    }
}

// The set {x | some free occurrence of x is in function position}: the
// direct traversal the compact apvars component is checked against.
inline void direct_apvars_rec(const TermPtr& t, std::vector<Name>& bound, NameSet& out) {
    switch (t->kind()) {
        case TermKind::Var:
            return;
        case TermKind::Lam:
            bound.push_back(t->name());
            direct_apvars_rec(t->body(), bound, out);
            bound.pop_back();
            return;
        case TermKind::App:
            if (t->fun()->kind() == TermKind::Var) {
                const Name& n = t->fun()->name();
                if (std::find(bound.rbegin(), bound.rend(), n) == bound.rend()) out.insert(n);
            }
            direct_apvars_rec(t->fun(), bound, out);
            direct_apvars_rec(t->arg(), bound, out);
            return;
        case TermKind::ESub:
            throw NotPureError();
    }
}

inline NameSet direct_apvars(const TermPtr& t) {
    std::vector<Name> bound;
    NameSet out;
    direct_apvars_rec(t, bound, out);
    return out;
}

template <typename CaseFn>
inline SuiteReport drive(const std::string& name, const SuiteConfig& cfg, CaseFn&& run_case) {
    SuiteReport report;
    report.name = name;
    for (std::size_t i = 0; i < cfg.cases; ++i) {
        Rng rng = case_rng(cfg, i);
        run_case(i, rng, report);
        ++report.cases_run;
    }
    return report;
}

inline void fail_with_shrink(SuiteReport& report, std::size_t index, const TermPtr& input,
                             const std::function<bool(const TermPtr&)>& still_fails,
                             const std::string& what) {
    TermPtr small = shrink_term(input, still_fails);
    std::string msg = what + "; input: " + print(input);
    if (!alpha_eq(small, input)) msg += "; shrunk: " + print(small);
    report.failures.push_back({index, msg});
}

inline SuiteReport suite_projection(const SuiteConfig& cfg) {
    auto violates = [&](const TermPtr& t) -> bool {
        if (!is_pure(t)) return false;
        auto beta = guarded_lo_beta(t, cfg.fuel, cfg.unfold_cap * 4);
        if (!beta) return false;
        DerivationTrace lou = normalize(t, Strategy::LOU, cfg.fuel);
        if (lou.exhausted) return false;
        TermPtr unfolded;
        try {
            unfolded = unfold(lou.final_term, cfg.unfold_cap);
        } catch (const UnfoldLimitError&) {
            return false;
        }
        return lou.db_count() != beta->steps || !alpha_eq(unfolded, beta->result);
    };
    return drive("projection", cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        TermPtr t = gen_pure_term(rng, cfg.max_size);
        auto beta = guarded_lo_beta(t, cfg.fuel, cfg.unfold_cap * 4);
        DerivationTrace lou = normalize(t, Strategy::LOU, cfg.fuel);
        if (!beta || lou.exhausted) {
            ++report.skipped;
            return;
        }
        TermPtr unfolded;
        try {
            unfolded = unfold(lou.final_term, cfg.unfold_cap);
        } catch (const UnfoldLimitError&) {
            ++report.skipped;
            return;
        }
        if (lou.db_count() != beta->steps) {
            fail_with_shrink(report, i, t, violates,
                             "dB count " + std::to_string(lou.db_count()) +
                                 " != LO beta steps " + std::to_string(beta->steps));
        } else if (!alpha_eq(unfolded, beta->result)) {
            fail_with_shrink(report, i, t, violates,
                             "unfolded LOU normal form differs from the beta normal form");
        }
    });
}

inline SuiteReport suite_normal_form(const SuiteConfig& cfg) {
    return drive("normal-form", cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        // forward direction on a LOU normal form reached from a pure term
        TermPtr t = gen_pure_term(rng, cfg.max_size);
        DerivationTrace lou = normalize(t, Strategy::LOU, cfg.fuel);
        if (!lou.exhausted) {
            try {
                TermPtr unfolded = unfold(lou.final_term, cfg.unfold_cap);
                if (!is_beta_normal(unfolded)) {
                    report.failures.push_back(
                        {i, "LOU-normal term with non-normal unfolding: " +
                                print(lou.final_term)});
                    return;
                }
            } catch (const UnfoldLimitError&) {
                ++report.skipped;
                return;
            }
        }
        // both directions on an LSC term
        TermPtr u = gen_lsc_term(rng, cfg.max_size / 2);
        try {
            bool unf_normal = is_beta_normal(unfold(u, cfg.unfold_cap));
            bool lou_normal = !next_redex(u, Strategy::LOU).has_value();
            if (unf_normal != lou_normal)
                report.failures.push_back(
                    {i, std::string("normal-form mismatch: unfolding ") +
                            (unf_normal ? "normal" : "reducible") + ", term " +
                            (lou_normal ? "LOU-normal" : "LOU-reducible") + ": " + print(u)});
        } catch (const UnfoldLimitError&) {
            ++report.skipped;
        }
    });
}

// Shared driver for the trace-shape suites: run LOU, verify, look at one
// named check of the report.
inline SuiteReport suite_trace_check(const std::string& suite, const SuiteConfig& cfg,
                                     const std::vector<std::string>& check_names) {
    return drive(suite, cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        TermPtr t = gen_pure_term(rng, cfg.max_size);
        DerivationTrace trace = normalize(t, Strategy::LOU, cfg.fuel);
        if (trace.exhausted) ++report.skipped;
        TraceReport verified = verify_trace(trace);
        for (const auto& name : check_names) {
            const CheckOutcome* c = verified.find(name);
            if (c && !c->pass) {
                auto violates = [&](const TermPtr& cand) -> bool {
                    if (!is_pure(cand)) return false;
                    DerivationTrace tr = normalize(cand, Strategy::LOU, cfg.fuel);
                    const CheckOutcome* cc = verify_trace(tr).find(name);
                    return cc && !cc->pass;
                };
                fail_with_shrink(report, i, t, violates, name + " check failed: " + c->detail);
            }
        }
    });
}

inline SuiteReport suite_useful_oracle(const SuiteConfig& cfg) {
    return drive("useful-oracle", cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        TermPtr u = gen_lsc_term(rng, cfg.max_size);
        for (const RedexInfo& r : list_redexes(u, /*shallow_only=*/true)) {
            if (r.kind != RedexInfo::Kind::LS) continue;
            bool oracle;
            try {
                oracle = is_useful_oracle(u, r, cfg.unfold_cap);
            } catch (const UnfoldLimitError&) {
                ++report.skipped;
                continue;
            }
            bool fast = is_useful(u, r);
            if (fast != oracle) {
                report.failures.push_back(
                    {i, "usefulness mismatch at " + to_string(r.position) + " of " + print(u) +
                            ": compact says " + (fast ? "useful" : "useless") +
                            ", oracle says " + (oracle ? "useful" : "useless")});
                return;
            }
        }
    });
}

inline SuiteReport suite_compact_analysis(const SuiteConfig& cfg) {
    return drive("compact-analysis", cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        TermPtr u = gen_lsc_term(rng, cfg.max_size);
        TermPtr unfolded;
        try {
            unfolded = unfold(u, cfg.unfold_cap);
        } catch (const UnfoldLimitError&) {
            ++report.skipped;
            return;
        }
        AnalysisTuple compact = analyze_compact(u);
        AnalysisTuple explicit_form = analyze_explicit(unfolded);
        if (!(compact == explicit_form)) {
            report.failures.push_back({i, "compact analysis differs from explicit analysis of "
                                          "the unfolding for " + print(u)});
            return;
        }
        if (compact.freevars != free_vars(unfolded)) {
            report.failures.push_back({i, "compact freevars differ from the unfolding's free "
                                          "variables for " + print(u)});
            return;
        }
        if (explicit_form.apvars != direct_apvars(unfolded)) {
            report.failures.push_back({i, "apvars differ from the direct traversal for " +
                                              print(unfolded)});
            return;
        }
        for (const Position& p : all_positions(u, /*shallow_only=*/true)) {
            TermPtr sub = resolve(u, p);
            TermPtr rel;
            try {
                rel = relative_unfold(sub, u, p, cfg.unfold_cap);
            } catch (const UnfoldLimitError&) {
                ++report.skipped;
                continue;
            }
            if (!(analyze_relative(sub, u, p) == analyze_explicit(rel))) {
                report.failures.push_back(
                    {i, "relative analysis differs from the explicit analysis of the relative "
                        "unfolding at " + to_string(p) + " of " + print(u)});
                return;
            }
        }
    });
}

inline SuiteReport suite_compact_equal(const SuiteConfig& cfg) {
    return drive("compact-equal", cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        TermPtr a = gen_lsc_term(rng, cfg.max_size);
        std::uniform_int_distribution<int> variant_d(0, 2);
        int variant = variant_d(rng);
        TermPtr b;
        if (variant == 0) {
            // alpha-variant with extra ls steps: same unfolding by construction
            b = parse(print(a));
            std::uniform_int_distribution<int> extra_d(0, 3);
            int extra = extra_d(rng);
            for (int k = 0; k < extra; ++k) {
                std::vector<RedexInfo> ls;
                for (const RedexInfo& r : list_redexes(b, true))
                    if (r.kind == RedexInfo::Kind::LS) ls.push_back(r);
                if (ls.empty()) break;
                std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
                b = apply_redex(b, ls[pick(rng)]);
            }
        } else if (variant == 1) {
            try {
                b = unfold(a, cfg.unfold_cap);
            } catch (const UnfoldLimitError&) {
                b = gen_lsc_term(rng, cfg.max_size);
            }
        } else {
            b = gen_lsc_term(rng, cfg.max_size);
        }
        bool expected;
        try {
            expected = alpha_eq(unfold(a, cfg.unfold_cap), unfold(b, cfg.unfold_cap));
        } catch (const UnfoldLimitError&) {
            ++report.skipped;
            return;
        }
        if (compact_equal(a, b) != expected)
            report.failures.push_back(
                {i, std::string("compact_equal disagrees with the unfolding oracle (expected ") +
                        (expected ? "equal" : "different") + ") on " + print(a) + "  vs  " +
                        print(b)});
    });
}

inline SuiteReport suite_order_totality(const SuiteConfig& cfg) {
    return drive("order-totality", cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        TermPtr u = gen_lsc_term(rng, cfg.max_size);
        auto positions = all_positions(u, /*shallow_only=*/false);
        for (std::size_t a = 0; a < positions.size(); ++a) {
            for (std::size_t b = 0; b < positions.size(); ++b) {
                auto ab = compare_lo(positions[a], positions[b]);
                auto ba = compare_lo(positions[b], positions[a]);
                bool same = positions[a] == positions[b];
                if ((ab == std::strong_ordering::equal) != same ||
                    (ab == std::strong_ordering::less) != (ba == std::strong_ordering::greater)) {
                    report.failures.push_back({i, "order not total/antisymmetric between " +
                                                      to_string(positions[a]) + " and " +
                                                      to_string(positions[b]) + " in " +
                                                      print(u)});
                    return;
                }
                if (positions[a].is_prefix_of(positions[b]) && !same &&
                    ab != std::strong_ordering::less) {
                    report.failures.push_back({i, "proper prefix " + to_string(positions[a]) +
                                                      " not below " + to_string(positions[b])});
                    return;
                }
            }
        }
        std::uniform_int_distribution<std::size_t> pick(0, positions.size() - 1);
        for (int s = 0; s < 100; ++s) {
            const Position& a = positions[pick(rng)];
            const Position& b = positions[pick(rng)];
            const Position& c = positions[pick(rng)];
            if (compare_lo(a, b) == std::strong_ordering::less &&
                compare_lo(b, c) == std::strong_ordering::less &&
                compare_lo(a, c) != std::strong_ordering::less) {
                report.failures.push_back({i, "order not transitive on " + to_string(a) + ", " +
                                                  to_string(b) + ", " + to_string(c)});
                return;
            }
        }
    });
}

inline SuiteReport suite_unfold_decomposition(const SuiteConfig& cfg) {
    return drive("unfold-decomposition", cfg, [&](std::size_t i, Rng& rng, SuiteReport& report) {
        TermPtr u = gen_lsc_term(rng, cfg.max_size);
        auto positions = all_positions(u, /*shallow_only=*/true);
        std::uniform_int_distribution<std::size_t> pick(0, positions.size() - 1);
        const Position& p = positions[pick(rng)];
        TermPtr sub = resolve(u, p);
        try {
            TermPtr whole = unfold(u, cfg.unfold_cap);
            auto [ctx, image] = unfold_context(u, p, cfg.unfold_cap);
            TermPtr rel = relative_unfold(sub, u, p, cfg.unfold_cap);
            if (!is_pure(ctx)) {
                report.failures.push_back({i, "unfolded context is not pure for " + print(u)});
                return;
            }
            if (!alpha_eq(whole, plug(ctx, image, rel))) {
                report.failures.push_back(
                    {i, "decomposition fails at " + to_string(p) + " of " + print(u)});
                return;
            }
            if (is_applicative(u, p) && !is_applicative(ctx, image)) {
                report.failures.push_back(
                    {i, "applicative position lost by context unfolding at " + to_string(p) +
                            " of " + print(u)});
            }
        } catch (const UnfoldLimitError&) {
            ++report.skipped;
        }
    });
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "projection") return detail::suite_projection(cfg);
    if (name == "normal-form") return detail::suite_normal_form(cfg);
    if (name == "subterm")
        return detail::suite_trace_check("subterm", cfg, {"subterm", "no-size-explosion"});
    if (name == "trace") return detail::suite_trace_check("trace", cfg, {"trace"});
    if (name == "syntactic-bound")
        return detail::suite_trace_check("syntactic-bound", cfg, {"syntactic-bound", "nestedness"});
    if (name == "quadratic") return detail::suite_trace_check("quadratic", cfg, {"quadratic"});
    if (name == "useful-oracle") return detail::suite_useful_oracle(cfg);
    if (name == "compact-analysis") return detail::suite_compact_analysis(cfg);
    if (name == "compact-equal") return detail::suite_compact_equal(cfg);
    if (name == "order-totality") return detail::suite_order_totality(cfg);
    if (name == "unfold-decomposition") return detail::suite_unfold_decomposition(cfg);
    throw Error("unknown property: " + name);
}

}  // namespace lsc
