#pragma once

// The rewriting engine over terms with explicit substitutions. Both rules
// act at a distance through shallow contexts:
//
//   dB:  L<\x. t> u   -->  L<t[x <- u]>      (beta at a distance)
//   ls:  C<x>[x <- u] -->  C<u>[x <- u]      (one occurrence at a time)
//
// The linear LO strategy fires the least shallow redex in the
// left-to-right outside-in order; the LOU strategy restricts ls steps to
// useful ones, i.e. those whose substituted copy, relatively unfolded,
// contains a beta-redex or is an abstraction landing in applicative
// position. Usefulness is decided either by actually unfolding (the
// oracle) or through the compact analysis in polynomial time.

#include <optional>
#include <string>
#include <vector>

#include "lsc/analysis.hpp"
#include "lsc/beta.hpp"
#include "lsc/position.hpp"
#include "lsc/term.hpp"
#include "lsc/unfold.hpp"

namespace lsc {

enum class Strategy { LinearLO, LOU };

inline std::string to_string(Strategy s) {
    return s == Strategy::LinearLO ? "lsc-lo" : "lsc-lou";
}

namespace detail {

// Rename the binders of a substitution spine that would capture a free
// variable of the incoming argument.
inline TermPtr rename_spine_clashes(const TermPtr& t, const NameSet& avoid,
                                    std::uint64_t& counter) {
    if (t->kind() != TermKind::ESub) return t;
    Name binder = t->name();
    TermPtr body = t->body();
    if (avoid.count(binder)) {
        Name fresh{binder.text, counter++};
        body = subst(body, binder, var(fresh));
        binder = fresh;
    }
    return esub(rename_spine_clashes(body, avoid, counter), binder, t->content());
}

// Replace the variable occurrence at the end of `path` (relative to the
// body of the binding substitution) with `copy`, renaming any binder
// crossed on the way down that would capture a free variable of the copy.
inline TermPtr substitute_occurrence(const TermPtr& t, const Position& path, std::size_t depth,
                                     const TermPtr& copy, const NameSet& copy_fv,
                                     std::uint64_t& counter) {
    if (depth == path.path.size()) {
        if (t->kind() != TermKind::Var) throw Error("invalid redex: occurrence is not a variable");
        return copy;
    }
    switch (path.path[depth]) {
        case Step::LamBody: {
            if (t->kind() != TermKind::Lam) throw Error("invalid redex: path mismatch");
            Name binder = t->name();
            TermPtr body = t->body();
            if (copy_fv.count(binder)) {
                Name fresh{binder.text, counter++};
                body = subst(body, binder, var(fresh));
                binder = fresh;
            }
            return lam(binder, substitute_occurrence(body, path, depth + 1, copy, copy_fv, counter));
        }
        case Step::AppLeft:
            if (t->kind() != TermKind::App) throw Error("invalid redex: path mismatch");
            return app(substitute_occurrence(t->fun(), path, depth + 1, copy, copy_fv, counter),
                       t->arg());
        case Step::AppRight:
            if (t->kind() != TermKind::App) throw Error("invalid redex: path mismatch");
            return app(t->fun(),
                       substitute_occurrence(t->arg(), path, depth + 1, copy, copy_fv, counter));
        case Step::ESubBody: {
            if (t->kind() != TermKind::ESub) throw Error("invalid redex: path mismatch");
            Name binder = t->name();
            TermPtr body = t->body();
            if (copy_fv.count(binder)) {
                Name fresh{binder.text, counter++};
                body = subst(body, binder, var(fresh));
                binder = fresh;
            }
            return esub(substitute_occurrence(body, path, depth + 1, copy, copy_fv, counter),
                        binder, t->content());
        }
        case Step::ESubContent: {
            if (t->kind() != TermKind::ESub) throw Error("invalid redex: path mismatch");
            return esub(t->body(), t->name(),
                        substitute_occurrence(t->content(), path, depth + 1, copy, copy_fv,
                                              counter));
        }
    }
    throw Error("invalid redex");
}

}  // namespace detail

// Fires one redex. For dB the application node becomes L<t[x <- u]>, with
// the spine binders renamed away from the free variables of u; for ls the
// occurrence is replaced by a copy of the binding substitution's content,
// renaming binders along the path that would capture it. The substitution
// node itself is left in place.
inline TermPtr apply_redex(const TermPtr& term, const RedexInfo& redex) {
    if (redex.kind == RedexInfo::Kind::DB) {
        TermPtr node = resolve(term, redex.position);
        if (node->kind() != TermKind::App) throw Error("invalid redex: expected an application");
        NameSet arg_fv = free_vars(node->arg());
        std::uint64_t counter = max_uid(term) + 1;
        TermPtr fixed = detail::rename_spine_clashes(node->fun(), arg_fv, counter);
        auto [core, spine] = strip_subst_spine(fixed);
        if (core->kind() != TermKind::Lam) throw Error("invalid redex: no abstraction under spine");
        TermPtr acc = esub(core->body(), core->name(), node->arg());
        for (const auto& [binder, content] : spine) acc = esub(acc, binder, content);
        return plug(term, redex.position, acc);
    }

    TermPtr es = resolve(term, redex.binder_position);
    if (es->kind() != TermKind::ESub || es->name() != redex.bound_name)
        throw Error("invalid redex: binder position does not hold the expected substitution");
    if (!redex.binder_position.is_prefix_of(redex.position) ||
        redex.position.path.size() <= redex.binder_position.path.size() ||
        redex.position.path[redex.binder_position.path.size()] != Step::ESubBody)
        throw Error("invalid redex: occurrence is not inside the substitution body");

    Position rest{std::vector<Step>(
        redex.position.path.begin() + static_cast<std::ptrdiff_t>(redex.binder_position.path.size()) + 1,
        redex.position.path.end())};
    TermPtr occurrence = resolve(es->body(), rest);
    if (occurrence->kind() != TermKind::Var || occurrence->name() != redex.bound_name)
        throw Error("invalid redex: position does not hold the bound variable");

    TermPtr copy = es->content();
    NameSet copy_fv = free_vars(copy);
    std::uint64_t counter = max_uid(term) + 1;
    TermPtr new_body =
        detail::substitute_occurrence(es->body(), rest, 0, copy, copy_fv, counter);
    return plug(term, redex.binder_position, esub(new_body, es->name(), es->content()));
}

// Usefulness by definition: relatively unfold the substituted copy and
// look at it. dB redexes are always useful. May hit the unfold cap.
inline bool is_useful_oracle(const TermPtr& term, const RedexInfo& redex,
                             std::size_t cap = default_unfold_cap) {
    if (redex.kind == RedexInfo::Kind::DB) return true;
    TermPtr es = resolve(term, redex.binder_position);
    TermPtr unfolded = relative_unfold(es->content(), term, redex.position, cap);
    if (contains_beta_redex(unfolded)) return true;
    return unfolded->kind() == TermKind::Lam && is_applicative(term, redex.position);
}

// Usefulness through the compact analysis: no unfolding, polynomial time.
inline bool is_useful(const TermPtr& term, const RedexInfo& redex) {
    if (redex.kind == RedexInfo::Kind::DB) return true;
    TermPtr es = resolve(term, redex.binder_position);
    AnalysisTuple tuple = analyze_relative(es->content(), term, redex.position);
    if (tuple.has_redex) return true;
    return tuple.nature.tag == Nature::Tag::Lam && is_applicative(term, redex.position);
}

namespace detail {

// Depth-first search in redex order, stopping at the first acceptable
// redex. Mirrors list_redexes but avoids enumerating past the answer.
struct RedexSearch {
    const TermPtr& root;
    Strategy strategy;
    std::vector<BinderFrame> scopes;
    Position cur;

    std::optional<RedexInfo> visit(const TermPtr& t) {
        switch (t->kind()) {
            case TermKind::Var: {
                for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
                    if (it->binder != t->name()) continue;
                    if (!it->from_es) return std::nullopt;
                    RedexInfo r;
                    r.kind = RedexInfo::Kind::LS;
                    r.position = cur;
                    r.binder_position = cur.prefix(it->node_depth);
                    r.bound_name = t->name();
                    if (strategy == Strategy::LinearLO || is_useful(root, r)) return r;
                    return std::nullopt;
                }
                return std::nullopt;
            }
            case TermKind::Lam: {
                scopes.push_back({t->name(), false, cur.path.size()});
                cur.path.push_back(Step::LamBody);
                auto r = visit(t->body());
                cur.path.pop_back();
                scopes.pop_back();
                return r;
            }
            case TermKind::App: {
                auto [core, spine] = strip_subst_spine(t->fun());
                if (core->kind() == TermKind::Lam) {
                    RedexInfo r;
                    r.kind = RedexInfo::Kind::DB;
                    r.position = cur;
                    r.spine_length = spine.size();
                    return r;
                }
                cur.path.push_back(Step::AppLeft);
                auto r = visit(t->fun());
                if (!r) {
                    cur.path.back() = Step::AppRight;
                    r = visit(t->arg());
                }
                cur.path.pop_back();
                return r;
            }
            case TermKind::ESub: {
                scopes.push_back({t->name(), true, cur.path.size()});
                cur.path.push_back(Step::ESubBody);
                auto r = visit(t->body());
                cur.path.pop_back();
                scopes.pop_back();
                return r;
            }
        }
        return std::nullopt;
    }
};

}  // namespace detail

// The least shallow redex the strategy may fire, or nothing if the term is
// normal for that strategy.
inline std::optional<RedexInfo> next_redex(const TermPtr& t, Strategy strategy) {
    detail::RedexSearch search{t, strategy, {}, {}};
    return search.visit(t);
}

struct TraceStep {
    RedexInfo redex;
    Measure result_measure;
    TermPtr duplicated;  // ls only: the substituted copy, null for dB
};

struct DerivationTrace {
    TermPtr initial;
    std::vector<TraceStep> steps;
    TermPtr final_term;
    bool exhausted = false;

    std::size_t db_count() const {
        std::size_t n = 0;
        for (const auto& s : steps) n += s.redex.kind == RedexInfo::Kind::DB;
        return n;
    }
    std::size_t ls_count() const { return steps.size() - db_count(); }
};

// Quadratic-overhead-informed default budget.
inline std::size_t default_fuel(const TermPtr& t) {
    std::size_t n = measure(t).size;
    return 10 * n * n + 100;
}

// Iterates next_redex/apply_redex up to `fuel` times, recording per-step
// statistics and the duplicated copy of every ls step.
inline DerivationTrace normalize(const TermPtr& term, Strategy strategy, std::size_t fuel) {
    DerivationTrace trace;
    trace.initial = term;
    TermPtr cur = term;
    while (true) {
        auto redex = next_redex(cur, strategy);
        if (!redex) break;
        if (trace.steps.size() == fuel) {
            trace.exhausted = true;
            break;
        }
        TraceStep step;
        step.redex = *redex;
        if (redex->kind == RedexInfo::Kind::LS)
            step.duplicated = resolve(cur, redex->binder_position)->content();
        cur = apply_redex(cur, *redex);
        step.result_measure = measure(cur);
        trace.steps.push_back(std::move(step));
    }
    trace.final_term = cur;
    return trace;
}

struct CheckOutcome {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct TraceReport {
    std::vector<CheckOutcome> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const CheckOutcome* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline bool contents_are_pure(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Var:
            return true;
        case TermKind::Lam:
            return contents_are_pure(t->body());
        case TermKind::App:
            return contents_are_pure(t->fun()) && contents_are_pure(t->arg());
        case TermKind::ESub:
            return is_pure(t->content()) && contents_are_pure(t->body());
    }
    return true;
}

}  // namespace detail

// Runtime verification of the structural properties a trace from the LOU
// strategy must satisfy. Failures are report entries, never exceptions.
inline TraceReport verify_trace(const DerivationTrace& trace) {
    TraceReport report;
    Measure m0 = measure(trace.initial);
    auto& checks = report.checks;

    {
        CheckOutcome c{"subterm", true, ""};
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            const auto& s = trace.steps[i];
            if (s.duplicated && !is_subterm_of(s.duplicated, trace.initial)) {
                c.pass = false;
                c.detail = "step " + std::to_string(i) + " duplicated a non-subterm";
                break;
            }
        }
        checks.push_back(std::move(c));
    }

    {
        CheckOutcome c{"no-size-explosion", true, ""};
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            std::size_t bound = (i + 2) * m0.size;  // term after k = i+1 steps
            if (trace.steps[i].result_measure.size > bound) {
                c.pass = false;
                c.detail = "size " + std::to_string(trace.steps[i].result_measure.size) +
                           " exceeds " + std::to_string(bound) + " after step " +
                           std::to_string(i + 1);
                break;
            }
        }
        checks.push_back(std::move(c));
    }

    {
        CheckOutcome c{"trace", true, ""};
        if (!m0.pure) {
            c.detail = "not applicable: initial term has explicit substitutions";
        } else {
            std::size_t es = measure(trace.final_term).es_count;
            std::size_t db = trace.db_count();
            if (es != db) {
                c.pass = false;
                c.detail = "final es_count " + std::to_string(es) + " != dB count " +
                           std::to_string(db);
            }
        }
        checks.push_back(std::move(c));
    }

    {
        CheckOutcome bound_check{"syntactic-bound", true, ""};
        CheckOutcome nested_check{"nestedness", true, ""};
        std::size_t i = 0;
        while (i < trace.steps.size()) {
            if (trace.steps[i].redex.kind != RedexInfo::Kind::LS) {
                ++i;
                continue;
            }
            std::size_t start = i;
            std::size_t es_at_start =
                start == 0 ? m0.es_count : trace.steps[start - 1].result_measure.es_count;
            while (i < trace.steps.size() && trace.steps[i].redex.kind == RedexInfo::Kind::LS) {
                if (i > start && nested_check.pass) {
                    const Position& prev = trace.steps[i - 1].redex.position;
                    const Position& curp = trace.steps[i].redex.position;
                    if (!prev.is_prefix_of(curp)) {
                        nested_check.pass = false;
                        nested_check.detail =
                            "step " + std::to_string(i) + " does not substitute inside the copy "
                            "of step " + std::to_string(i - 1);
                    }
                }
                ++i;
            }
            std::size_t run_len = i - start;
            if (run_len > es_at_start && bound_check.pass) {
                bound_check.pass = false;
                bound_check.detail = "ls run of length " + std::to_string(run_len) +
                                     " from step " + std::to_string(start) +
                                     " exceeds es_count " + std::to_string(es_at_start);
            }
        }
        checks.push_back(std::move(bound_check));
        checks.push_back(std::move(nested_check));
    }

    {
        CheckOutcome c{"quadratic", true, ""};
        if (trace.exhausted) {
            c.detail = "not applicable: fuel exhausted";
        } else {
            std::size_t db = trace.db_count();
            if (trace.steps.size() > db * db + db) {
                c.pass = false;
                c.detail = "length " + std::to_string(trace.steps.size()) + " exceeds dB^2 + dB = " +
                           std::to_string(db * db + db);
            }
        }
        checks.push_back(std::move(c));
    }

    {
        CheckOutcome c{"shallow", true, ""};
        if (!m0.pure) {
            c.detail = "not applicable: initial term has explicit substitutions";
        } else {
            try {
                TermPtr cur = trace.initial;
                for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                    cur = apply_redex(cur, trace.steps[i].redex);
                    if (measure(cur) != trace.steps[i].result_measure) {
                        c.pass = false;
                        c.detail = "replay measure mismatch at step " + std::to_string(i);
                        break;
                    }
                    if (!detail::contents_are_pure(cur)) {
                        c.pass = false;
                        c.detail = "substitution inside a substitution after step " +
                                   std::to_string(i);
                        break;
                    }
                }
                if (c.pass && !alpha_eq(cur, trace.final_term)) {
                    c.pass = false;
                    c.detail = "replay does not reproduce the final term";
                }
            } catch (const Error& e) {
                c.pass = false;
                c.detail = std::string("replay failed: ") + e.what();
            }
        }
        checks.push_back(std::move(c));
    }

    return report;
}

}  // namespace lsc
