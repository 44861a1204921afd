// Acceptance suite: runs every headline property at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "lsc/analysis.hpp"
#include "lsc/beta.hpp"
#include "lsc/engine.hpp"
#include "lsc/family.hpp"
#include "lsc/suites.hpp"
#include "lsc/syntax.hpp"
#include "lsc/unfold.hpp"

using namespace lsc;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int index, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("[%s] %2d. %s%s%s\n", pass ? "PASS" : "FAIL", index, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

std::string suite_stats(const SuiteReport& r, double secs) {
    return std::to_string(r.cases_run) + " cases, " + std::to_string(r.skipped) + " skipped, " +
           std::to_string(r.failures.size()) + " failures, " + std::to_string(secs).substr(0, 5) +
           "s";
}

void run_suite_criterion(int index, const std::string& what, const std::string& suite,
                         const SuiteConfig& cfg, double budget_secs) {
    auto t0 = Clock::now();
    SuiteReport r = run_suite(suite, cfg);
    double secs = seconds_since(t0);
    bool pass = r.pass() && secs < budget_secs;
    std::string detail = suite_stats(r, secs);
    if (!r.failures.empty()) detail += "; first: " + r.failures.front().message;
    report(index, what, pass, detail);
}

}  // namespace

int main() {
    // 1. Size-explosion family under the reference engine: exactly n steps,
    //    |result| = 8*2^n - 3, for n = 0..12, in under 10 seconds.
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (std::size_t n = 0; n <= 12 && ok; ++n) {
            TermPtr tn = family_term(n);
            if (measure(tn).size != 7 * n + 5) {
                ok = false;
                detail = "bad |t_" + std::to_string(n) + "|";
                break;
            }
            BetaRun run = normalize_lo_beta(tn, 4096);
            std::size_t expected = 8 * (std::size_t(1) << n) - 3;
            if (run.exhausted || run.steps != n || measure(run.result).size != expected) {
                ok = false;
                detail = "n=" + std::to_string(n) + ": steps " + std::to_string(run.steps) +
                         ", size " + std::to_string(measure(run.result).size) + " (want " +
                         std::to_string(n) + ", " + std::to_string(expected) + ")";
            }
        }
        double secs = seconds_since(t0);
        if (ok && secs >= 10.0) {
            ok = false;
            detail = "too slow: " + std::to_string(secs) + "s";
        }
        report(1, "size-explosion family: n LO beta steps, |r_n| = 8*2^n - 3 (n <= 12)", ok,
               detail);
    }

    // 2. Compact normalization of the family: n dB steps, n substitutions in
    //    the result, unfolding alpha-equal to the beta normal form (n <= 12,
    //    under 5s); then n = 30 twice plus compact_equal, no unfolding,
    //    under 10 seconds.
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (std::size_t n = 0; n <= 12 && ok; ++n) {
            TermPtr tn = family_term(n);
            DerivationTrace trace = normalize(tn, Strategy::LOU, 4096);
            BetaRun beta = normalize_lo_beta(tn, 4096);
            if (trace.exhausted || trace.steps.size() != n || trace.db_count() != n ||
                trace.ls_count() != 0 || measure(trace.final_term).es_count != n ||
                !alpha_eq(unfold(trace.final_term, 1u << 20), beta.result)) {
                ok = false;
                detail = "n=" + std::to_string(n);
            }
        }
        double secs = seconds_since(t0);
        if (ok && secs >= 5.0) {
            ok = false;
            detail = "small n too slow: " + std::to_string(secs) + "s";
        }
        auto t1 = Clock::now();
        if (ok) {
            DerivationTrace a = normalize(family_term(30), Strategy::LOU, 4096);
            DerivationTrace b = normalize(family_term(30), Strategy::LOU, 4096);
            std::uint64_t virt = unfolded_size(a.final_term);
            if (a.exhausted || b.exhausted || a.db_count() != 30 ||
                virt != (std::uint64_t(8) << 30) - 3 || !compact_equal(a.final_term, b.final_term)) {
                ok = false;
                detail = "n=30 compact run failed";
            }
            double secs30 = seconds_since(t1);
            if (ok && secs30 >= 10.0) {
                ok = false;
                detail = "n=30 too slow: " + std::to_string(secs30) + "s";
            }
            if (ok)
                detail = "n=30 final has " + std::to_string(measure(a.final_term).size) +
                         " nodes standing for " + std::to_string(virt) + " unfolded nodes";
        }
        report(2, "compact LOU normalization of the family, incl. n = 30 without unfolding", ok,
               detail);
    }

    SuiteConfig pure_cfg;  // seed 7, fuel 200, cap 1e5 per the stated budgets
    pure_cfg.seed = 7;
    pure_cfg.cases = 500;
    pure_cfg.max_size = 40;
    pure_cfg.fuel = 200;
    pure_cfg.unfold_cap = 100000;

    // 3. Projection: dB steps of LOU = LO beta steps, same normal form.
    run_suite_criterion(3, "projection: LOU dB count and unfolding match LO beta (500 terms)",
                        "projection", pure_cfg, 60.0);

    // 4. Normal-form property, both directions.
    run_suite_criterion(4, "normal form: LOU-normal iff unfolding beta-normal", "normal-form",
                        pure_cfg, 60.0);

    // 5. Trace property: es_count(final) = dB count from pure terms.
    run_suite_criterion(5, "trace: result carries one substitution per dB step", "trace",
                        pure_cfg, 60.0);

    // 6. Subterm + no-size-explosion along every LOU trace.
    run_suite_criterion(6, "subterm + no-size-explosion on every LOU trace", "subterm", pure_cfg,
                        60.0);

    // 7. Syntactic bound + nestedness of ls runs.
    run_suite_criterion(7, "syntactic bound + nestedness of ls runs", "syntactic-bound", pure_cfg,
                        60.0);

    // 8. Quadratic overhead: |trace| <= dB^2 + dB, exact.
    run_suite_criterion(8, "quadratic overhead bound on completed LOU traces", "quadratic",
                        pure_cfg, 60.0);

    // 9. Usefulness test = oracle; compact analyses = explicit analyses.
    {
        SuiteConfig cfg = pure_cfg;
        cfg.cases = 300;
        auto t0 = Clock::now();
        SuiteReport oracle = run_suite("useful-oracle", cfg);
        SuiteReport analysis = run_suite("compact-analysis", cfg);
        double secs = seconds_since(t0);
        bool pass = oracle.pass() && analysis.pass() && secs < 60.0;
        std::string detail = "oracle: " + suite_stats(oracle, secs) +
                             "; analysis failures: " + std::to_string(analysis.failures.size());
        if (!oracle.failures.empty()) detail += "; " + oracle.failures.front().message;
        if (!analysis.failures.empty()) detail += "; " + analysis.failures.front().message;
        report(9, "usefulness oracle equivalence + compact analysis correctness (300 terms)",
               pass, detail);
    }

    // 10. Order totality, antisymmetry, sampled transitivity.
    {
        SuiteConfig cfg = pure_cfg;
        cfg.cases = 200;
        run_suite_criterion(10, "left-to-right outside-in order is total (200 terms)",
                            "order-totality", cfg, 60.0);
    }

    // 11. Context decomposition of unfoldings.
    {
        SuiteConfig cfg = pure_cfg;
        cfg.cases = 300;
        run_suite_criterion(11, "unfolding decomposition through shallow contexts (300 pairs)",
                            "unfold-decomposition", cfg, 60.0);
    }

    // 12. compact_equal agrees with the alpha oracle on unfoldings.
    {
        SuiteConfig cfg = pure_cfg;
        cfg.cases = 200;
        run_suite_criterion(12, "compact equality = alpha equality of unfoldings (200 pairs)",
                            "compact-equal", cfg, 60.0);
    }

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
