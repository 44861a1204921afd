#pragma once

// Reference engine for the pure lambda-calculus: leftmost-outermost beta
// redex selection, single steps by plain (copying) substitution, and fueled
// normalization. This is deliberately the naive model every sharing-based
// result is measured against, so it performs no sharing whatsoever.

#include <optional>

#include "lsc/position.hpp"
#include "lsc/term.hpp"

namespace lsc {

// Any subterm of the shape (\x. t) u, anywhere, binders included.
inline bool contains_beta_redex(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Var:
            return false;
        case TermKind::Lam:
            return contains_beta_redex(t->body());
        case TermKind::App:
            if (t->fun()->kind() == TermKind::Lam) return true;
            return contains_beta_redex(t->fun()) || contains_beta_redex(t->arg());
        case TermKind::ESub:
            throw NotPureError();
    }
    return false;
}

namespace detail {

inline bool find_lo_beta_rec(const TermPtr& t, Position& cur, Position& out) {
    switch (t->kind()) {
        case TermKind::Var:
            return false;
        case TermKind::Lam:
            cur.path.push_back(Step::LamBody);
            if (find_lo_beta_rec(t->body(), cur, out)) return true;
            cur.path.pop_back();
            return false;
        case TermKind::App:
            if (t->fun()->kind() == TermKind::Lam) {
                out = cur;
                return true;
            }
            cur.path.push_back(Step::AppLeft);
            if (find_lo_beta_rec(t->fun(), cur, out)) return true;
            cur.path.back() = Step::AppRight;
            if (find_lo_beta_rec(t->arg(), cur, out)) return true;
            cur.path.pop_back();
            return false;
        case TermKind::ESub:
            throw NotPureError();
    }
    return false;
}

}  // namespace detail

// Position of the leftmost-outermost beta redex, or nothing if the term is
// beta-normal. The input must be pure.
inline std::optional<Position> find_lo_beta_redex(const TermPtr& t) {
    Position cur, out;
    if (detail::find_lo_beta_rec(t, cur, out)) return out;
    return std::nullopt;
}

inline bool is_beta_normal(const TermPtr& t) {
    return !find_lo_beta_redex(t).has_value();
}

// Contracts the leftmost-outermost redex; nothing iff normal.
inline std::optional<TermPtr> step_lo_beta(const TermPtr& t) {
    auto pos = find_lo_beta_redex(t);
    if (!pos) return std::nullopt;
    TermPtr redex = resolve(t, *pos);
    TermPtr contracted = subst(redex->fun()->body(), redex->fun()->name(), redex->arg());
    return plug(t, *pos, contracted);
}

struct BetaRun {
    TermPtr result;
    std::size_t steps = 0;
    bool exhausted = false;
};

// Iterates step_lo_beta at most `fuel` times; exhausted is set when a redex
// remains after the budget is spent.
inline BetaRun normalize_lo_beta(const TermPtr& t, std::size_t fuel) {
    BetaRun run{t, 0, false};
    while (true) {
        auto next = step_lo_beta(run.result);
        if (!next) return run;
        if (run.steps == fuel) {
            run.exhausted = true;
            return run;
        }
        run.result = *next;
        ++run.steps;
    }
}

}  // namespace lsc
