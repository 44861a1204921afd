// lscnorm: normalize lambda-terms with or without sharing, inspect the
// compact analyses, generate the size-explosion family, compare terms in
// compact form, and run the seeded property suites.
//
// Exit codes: 0 success / terms equal / all checks pass, 1 parse or usage
// error, 2 fuel exhausted, 3 unfolding cap hit, 4 terms differ.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lsc/beta.hpp"
#include "lsc/engine.hpp"
#include "lsc/family.hpp"
#include "lsc/suites.hpp"
#include "lsc/syntax.hpp"
#include "lsc/trace_json.hpp"
#include "lsc/unfold.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_fuel = 2;
constexpr int exit_unfold_cap = 3;
constexpr int exit_different = 4;

struct FamilySpec {
    std::string name;
    std::size_t n = 0;
};

FamilySpec parse_family(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw lsc::Error("expected NAME:N, e.g. size-explosion:5");
    FamilySpec f;
    f.name = spec.substr(0, colon);
    try {
        f.n = std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw lsc::Error("bad family index in '" + spec + "'");
    }
    return f;
}

lsc::TermPtr make_family(const FamilySpec& f) {
    if (f.name != "size-explosion") throw lsc::Error("unknown family '" + f.name + "'");
    return lsc::family_term(f.n);
}

lsc::Position parse_position(const std::string& text) {
    lsc::Position p;
    if (text.empty() || text == "ε") return p;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t slash = text.find('/', start);
        std::string tok = text.substr(start, slash == std::string::npos ? slash : slash - start);
        if (tok == "λ" || tok == "lam")
            p.path.push_back(lsc::Step::LamBody);
        else if (tok == "·L" || tok == "L")
            p.path.push_back(lsc::Step::AppLeft);
        else if (tok == "·R" || tok == "R")
            p.path.push_back(lsc::Step::AppRight);
        else if (tok == "[b]" || tok == "b")
            p.path.push_back(lsc::Step::ESubBody);
        else if (tok == "[c]" || tok == "c")
            p.path.push_back(lsc::Step::ESubContent);
        else
            throw lsc::Error("bad position step '" + tok + "'");
        if (slash == std::string::npos) break;
        start = slash + 1;
    }
    return p;
}

struct NormalizeOptions {
    std::string strategy = "lsc-lou";
    std::string input;
    std::string family;
    std::size_t fuel = 0;  // 0: pick a default from the term size
    std::size_t unfold_cap = lsc::default_unfold_cap;
    bool want_trace = false;
    bool want_verify = false;
    bool want_unfold = false;
    bool json = false;
};

int run_normalize(const NormalizeOptions& opt) {
    lsc::TermPtr term = opt.family.empty() ? lsc::parse(opt.input)
                                           : make_family(parse_family(opt.family));
    std::size_t fuel = opt.fuel ? opt.fuel : lsc::default_fuel(term);

    if (opt.strategy == "lo-beta") {
        if (!lsc::is_pure(term)) throw lsc::Error("lo-beta requires a pure term");
        lsc::BetaRun run = lsc::normalize_lo_beta(term, fuel);
        lsc::Measure m = lsc::measure(run.result);
        if (opt.json) {
            nlohmann::ordered_json j;
            j["final"] = lsc::print(run.result);
            j["steps"] = run.steps;
            j["size"] = m.size;
            j["exhausted"] = run.exhausted;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "final: " << lsc::print(run.result) << "\n";
            std::cout << "steps: " << run.steps << "\n";
            std::cout << "size: " << m.size << "\n";
        }
        return run.exhausted ? exit_fuel : exit_ok;
    }

    lsc::Strategy strategy;
    if (opt.strategy == "lsc-lo")
        strategy = lsc::Strategy::LinearLO;
    else if (opt.strategy == "lsc-lou")
        strategy = lsc::Strategy::LOU;
    else
        throw lsc::Error("unknown strategy '" + opt.strategy + "'");

    lsc::DerivationTrace trace = lsc::normalize(term, strategy, fuel);
    lsc::Measure m = lsc::measure(trace.final_term);

    std::optional<std::string> unfolded;
    bool cap_hit = false;
    if (opt.want_unfold) {
        try {
            unfolded = lsc::print(lsc::unfold(trace.final_term, opt.unfold_cap));
        } catch (const lsc::UnfoldLimitError&) {
            cap_hit = true;
        }
    }

    if (opt.json) {
        nlohmann::ordered_json j;
        j["final"] = lsc::print(trace.final_term);
        j["steps"] = trace.steps.size();
        j["db_count"] = trace.db_count();
        j["ls_count"] = trace.ls_count();
        j["size"] = m.size;
        j["es_count"] = m.es_count;
        j["exhausted"] = trace.exhausted;
        if (unfolded) j["unfold"] = *unfolded;
        if (cap_hit) j["unfold"] = nullptr;
        if (opt.want_trace) j["trace"] = lsc::trace_to_json(trace);
        if (opt.want_verify) j["verify"] = lsc::verify_report_to_json(lsc::verify_trace(trace));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "final: " << lsc::print(trace.final_term) << "\n";
        std::cout << "steps: " << trace.steps.size() << " (dB " << trace.db_count() << ", ls "
                  << trace.ls_count() << ")\n";
        std::cout << "size: " << m.size << "  es: " << m.es_count << "\n";
        if (unfolded) std::cout << "unfold: " << *unfolded << "\n";
        if (cap_hit) std::cout << "unfold: exceeds cap\n";
        if (opt.want_trace) std::cout << lsc::trace_to_json(trace).dump(2) << "\n";
        if (opt.want_verify) {
            for (const lsc::CheckOutcome& c : lsc::verify_trace(trace).checks) {
                std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
                if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
                std::cout << "\n";
            }
        }
    }
    if (trace.exhausted) return exit_fuel;
    if (cap_hit) return exit_unfold_cap;
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"normalization engine for the lambda-calculus with explicit substitutions"};
    cli.require_subcommand(1);

    NormalizeOptions nopt;
    auto* normalize = cli.add_subcommand("normalize", "normalize a term");
    normalize->add_option("term", nopt.input, "term to normalize");
    normalize->add_option("--strategy", nopt.strategy, "lo-beta | lsc-lo | lsc-lou")
        ->default_str("lsc-lou");
    normalize->add_option("--family", nopt.family, "use a generated family member, NAME:N");
    normalize->add_option("--fuel", nopt.fuel, "step budget (default 10*|t|^2+100)")
        ->envname("LSCNORM_FUEL");
    normalize->add_option("--unfold-cap", nopt.unfold_cap, "node cap for unfolding");
    normalize->add_flag("--trace", nopt.want_trace, "emit the serialized derivation trace");
    normalize->add_flag("--verify", nopt.want_verify, "run the trace verifier and print its report");
    normalize->add_flag("--unfold-result", nopt.want_unfold, "also print the unfolded result");
    normalize->add_flag("--json", nopt.json, "JSON output");

    std::string family_spec;
    auto* family = cli.add_subcommand("family", "print a member of a term family");
    family->add_option("spec", family_spec, "NAME:N, e.g. size-explosion:5")->required();

    std::string property;
    lsc::SuiteConfig suite_cfg;
    bool check_json = false;
    auto* check = cli.add_subcommand("check", "run a property suite");
    std::string property_help = "one of:";
    for (const auto& n : lsc::suite_names()) property_help += " " + n;
    check->add_option("property", property, property_help)->required();
    check->add_option("--cases", suite_cfg.cases, "number of generated cases");
    check->add_option("--seed", suite_cfg.seed, "generator seed");
    check->add_option("--max-size", suite_cfg.max_size, "maximum generated term size");
    check->add_option("--fuel", suite_cfg.fuel, "step budget per case")->envname("LSCNORM_FUEL");
    check->add_option("--unfold-cap", suite_cfg.unfold_cap, "node cap for unfolding");
    check->add_flag("--json", check_json, "JSON output");

    std::string lhs, rhs;
    std::size_t eq_fuel = 0;
    auto* equal = cli.add_subcommand("equal", "do two terms share a normal form?");
    equal->add_option("a", lhs, "first term")->required();
    equal->add_option("b", rhs, "second term")->required();
    equal->add_option("--fuel", eq_fuel, "step budget for each side")->envname("LSCNORM_FUEL");

    std::string analyze_input, analyze_at;
    bool analyze_json = false;
    auto* analyze = cli.add_subcommand("analyze", "nature/redex/apvars/freevars of a term");
    analyze->add_option("term", analyze_input, "term to analyze")->required();
    analyze->add_option("--at", analyze_at,
                        "analyze the subterm at this position relative to its context "
                        "(slash path, steps lam L R b c)");
    analyze->add_flag("--json", analyze_json, "JSON output");

    CLI11_PARSE(cli, argc, argv);

    try {
        if (normalize->parsed()) {
            if (nopt.input.empty() == nopt.family.empty()) {
                std::cerr << "error: provide exactly one of TERM or --family\n";
                return exit_input_error;
            }
            return run_normalize(nopt);
        }
        if (family->parsed()) {
            std::cout << lsc::print(make_family(parse_family(family_spec))) << "\n";
            return exit_ok;
        }
        if (check->parsed()) {
            lsc::SuiteReport report = lsc::run_suite(property, suite_cfg);
            if (check_json) {
                std::cout << lsc::report_to_json(report).dump(2) << "\n";
            } else {
                std::cout << report.name << ": " << report.cases_run << " cases, "
                          << report.skipped << " skipped, " << report.failures.size()
                          << " failures\n";
                for (const lsc::SuiteFailure& f : report.failures)
                    std::cout << "  case " << f.index << ": " << f.message << "\n";
                std::cout << (report.pass() ? "PASS" : "FAIL") << "\n";
            }
            return report.pass() ? exit_ok : exit_input_error;
        }
        if (equal->parsed()) {
            lsc::TermPtr a = lsc::parse(lhs);
            lsc::TermPtr b = lsc::parse(rhs);
            std::size_t fuel = eq_fuel ? eq_fuel
                                       : std::max(lsc::default_fuel(a), lsc::default_fuel(b));
            lsc::DerivationTrace ta = lsc::normalize(a, lsc::Strategy::LOU, fuel);
            lsc::DerivationTrace tb = lsc::normalize(b, lsc::Strategy::LOU, fuel);
            if (ta.exhausted || tb.exhausted) {
                std::cout << "fuel exhausted\n";
                return exit_fuel;
            }
            bool eq = lsc::compact_equal(ta.final_term, tb.final_term);
            std::cout << (eq ? "equal" : "different") << "\n";
            return eq ? exit_ok : exit_different;
        }
        if (analyze->parsed()) {
            lsc::TermPtr term = lsc::parse(analyze_input);
            lsc::Position pos = parse_position(analyze_at);
            lsc::AnalysisTuple tuple = lsc::analyze_relative(lsc::resolve(term, pos), term, pos);
            if (analyze_json) {
                std::cout << lsc::analysis_to_json(tuple).dump(2) << "\n";
            } else {
                std::cout << "nature: " << lsc::to_string(tuple.nature) << "\n";
                std::cout << "has_redex: " << (tuple.has_redex ? "true" : "false") << "\n";
                auto show = [](const lsc::NameSet& s) {
                    std::string out;
                    for (const lsc::Name& n : s) {
                        if (!out.empty()) out += ", ";
                        out += n.uid ? n.text + "#" + std::to_string(n.uid) : n.text;
                    }
                    return out.empty() ? "{}" : "{" + out + "}";
                };
                std::cout << "apvars: " << show(tuple.apvars) << "\n";
                std::cout << "freevars: " << show(tuple.freevars) << "\n";
            }
            return exit_ok;
        }
    } catch (const lsc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const lsc::UnfoldLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_unfold_cap;
    } catch (const lsc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}
