#pragma once

// Core term syntax for the lambda-calculus extended with explicit
// substitutions t[x <- u], plus the basic syntactic operations: measures,
// free variables, capture-avoiding substitution, alpha-equivalence and
// subterm testing. Terms are immutable values and safe to share across
// threads; all freshening is driven by call-local counters.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lsc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPureError : Error {
    NotPureError() : Error("term contains explicit substitutions") {}
};

// A variable name: source text plus a numeric disambiguator. Names parsed
// from input carry uid 0; freshened binders get uids above every uid in
// the terms involved, so distinct binders never clash.
struct Name {
    std::string text;
    std::uint64_t uid = 0;

    friend bool operator==(const Name&, const Name&) = default;
    friend auto operator<=>(const Name&, const Name&) = default;
};

using NameSet = std::set<Name>;

enum class TermKind { Var, Lam, App, ESub };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// One immutable node. Lam and ESub bind their name in child a only; the
// content of an explicit substitution (child b) lies outside the binder's
// scope, and the construction invariant keeps the binder out of the
// content's free variables.
class Term {
public:
    TermKind kind() const { return kind_; }
    const Name& name() const { return name_; }

    const TermPtr& body() const { return a_; }     // Lam, ESub
    const TermPtr& fun() const { return a_; }      // App
    const TermPtr& arg() const { return b_; }      // App
    const TermPtr& content() const { return b_; }  // ESub

    const TermPtr& child_a() const { return a_; }
    const TermPtr& child_b() const { return b_; }

private:
    Term(TermKind k, Name n, TermPtr a, TermPtr b)
        : kind_(k), name_(std::move(n)), a_(std::move(a)), b_(std::move(b)) {}

    TermKind kind_;
    Name name_;
    TermPtr a_;
    TermPtr b_;

    friend TermPtr var(Name n);
    friend TermPtr lam(Name binder, TermPtr body);
    friend TermPtr app(TermPtr fun, TermPtr arg);
    friend TermPtr esub(TermPtr body, Name binder, TermPtr content);
};

TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& value);

inline TermPtr var(Name n) {
    return TermPtr(new Term(TermKind::Var, std::move(n), nullptr, nullptr));
}

inline TermPtr lam(Name binder, TermPtr body) {
    return TermPtr(new Term(TermKind::Lam, std::move(binder), std::move(body), nullptr));
}

inline TermPtr app(TermPtr fun, TermPtr arg) {
    return TermPtr(new Term(TermKind::App, Name{}, std::move(fun), std::move(arg)));
}

// True iff `n` occurs free in `t`.
inline bool occurs_free(const Name& n, const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Var: return t->name() == n;
        case TermKind::Lam: return t->name() != n && occurs_free(n, t->body());
        case TermKind::App: return occurs_free(n, t->fun()) || occurs_free(n, t->arg());
        case TermKind::ESub:
            return (t->name() != n && occurs_free(n, t->body())) || occurs_free(n, t->content());
    }
    return false;
}

// Largest uid appearing anywhere in the term (0 if none).
inline std::uint64_t max_uid(const TermPtr& t) {
    std::uint64_t m = t->name().uid;
    if (t->child_a()) m = std::max(m, max_uid(t->child_a()));
    if (t->child_b()) m = std::max(m, max_uid(t->child_b()));
    return m;
}

// Explicit substitution constructor. Enforces the convention that the
// binder does not occur free in the content: if it does, the binder (and
// its bound occurrences in the body) is freshened, leaving the content
// untouched.
inline TermPtr esub(TermPtr body, Name binder, TermPtr content) {
    if (occurs_free(binder, content)) {
        std::uint64_t next = std::max(max_uid(body), max_uid(content)) + 1;
        Name fresh{binder.text, next};
        body = subst(body, binder, var(fresh));
        binder = fresh;
    }
    return TermPtr(new Term(TermKind::ESub, std::move(binder), std::move(body), std::move(content)));
}

struct Measure {
    std::size_t size = 0;
    std::size_t es_count = 0;
    bool pure = true;

    friend bool operator==(const Measure&, const Measure&) = default;
};

// Node count with every constructor costing 1; es_count is the number of
// explicit substitution nodes.
inline Measure measure(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Var: return {1, 0, true};
        case TermKind::Lam: {
            Measure m = measure(t->body());
            return {1 + m.size, m.es_count, m.pure};
        }
        case TermKind::App: {
            Measure f = measure(t->fun());
            Measure a = measure(t->arg());
            return {1 + f.size + a.size, f.es_count + a.es_count, f.pure && a.pure};
        }
        case TermKind::ESub: {
            Measure b = measure(t->body());
            Measure c = measure(t->content());
            return {1 + b.size + c.size, 1 + b.es_count + c.es_count, false};
        }
    }
    return {};
}

inline bool is_pure(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Var: return true;
        case TermKind::Lam: return is_pure(t->body());
        case TermKind::App: return is_pure(t->fun()) && is_pure(t->arg());
        case TermKind::ESub: return false;
    }
    return true;
}

inline void free_vars_into(const TermPtr& t, NameSet& out) {
    switch (t->kind()) {
        case TermKind::Var:
            out.insert(t->name());
            return;
        case TermKind::Lam: {
            NameSet inner;
            free_vars_into(t->body(), inner);
            inner.erase(t->name());
            out.merge(inner);
            return;
        }
        case TermKind::App:
            free_vars_into(t->fun(), out);
            free_vars_into(t->arg(), out);
            return;
        case TermKind::ESub: {
            NameSet inner;
            free_vars_into(t->body(), inner);
            inner.erase(t->name());
            out.merge(inner);
            free_vars_into(t->content(), out);
            return;
        }
    }
}

inline NameSet free_vars(const TermPtr& t) {
    NameSet s;
    free_vars_into(t, s);
    return s;
}

namespace detail {

// Capture-avoiding substitution worker. Subtrees without a free occurrence
// of the replaced name are returned unchanged (pointer-shared); the occurs
// memo keeps that check linear even on heavily shared trees.
struct Substituter {
    Name from;
    TermPtr to;
    NameSet to_fv;
    std::uint64_t counter;
    std::unordered_map<const Term*, bool> occurs_memo;

    bool occurs(const TermPtr& t) {
        auto it = occurs_memo.find(t.get());
        if (it != occurs_memo.end()) return it->second;
        bool r;
        switch (t->kind()) {
            case TermKind::Var: r = t->name() == from; break;
            case TermKind::Lam: r = t->name() != from && occurs(t->body()); break;
            case TermKind::App: r = occurs(t->fun()) || occurs(t->arg()); break;
            case TermKind::ESub:
            default:
                r = (t->name() != from && occurs(t->body())) || occurs(t->content());
                break;
        }
        occurs_memo.emplace(t.get(), r);
        return r;
    }

    TermPtr run(const TermPtr& t) {
        if (!occurs(t)) return t;
        switch (t->kind()) {
            case TermKind::Var:
                return to;
            case TermKind::Lam: {
                Name b = t->name();
                TermPtr body = t->body();
                if (to_fv.count(b)) {
                    Name b2{b.text, counter++};
                    body = subst(body, b, var(b2));
                    b = b2;
                }
                return lam(b, run(body));
            }
            case TermKind::App:
                return app(run(t->fun()), run(t->arg()));
            case TermKind::ESub:
            default: {
                Name b = t->name();
                TermPtr body = t->body();
                TermPtr content = t->content();
                if (t->name() != from && occurs(body)) {
                    if (to_fv.count(b)) {
                        Name b2{b.text, counter++};
                        body = subst(body, b, var(b2));
                        b = b2;
                    }
                    body = run(body);
                }
                if (occurs(content)) content = run(content);
                return esub(body, b, content);
            }
        }
    }
};

}  // namespace detail

// Implicit (meta-level) substitution t{x := value}: capture-avoiding,
// renaming binders on demand.
inline TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& value) {
    detail::Substituter s{x, value, free_vars(value),
                          std::max(max_uid(t), max_uid(value)) + 1, {}};
    return s.run(t);
}

namespace detail {

inline bool alpha_eq_rec(const TermPtr& a, const TermPtr& b,
                         std::vector<std::pair<Name, Name>>& bound) {
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case TermKind::Var: {
            for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
                bool la = it->first == a->name();
                bool lb = it->second == b->name();
                if (la || lb) return la && lb;
            }
            return a->name() == b->name();
        }
        case TermKind::Lam: {
            bound.emplace_back(a->name(), b->name());
            bool r = alpha_eq_rec(a->body(), b->body(), bound);
            bound.pop_back();
            return r;
        }
        case TermKind::App:
            return alpha_eq_rec(a->fun(), b->fun(), bound) &&
                   alpha_eq_rec(a->arg(), b->arg(), bound);
        case TermKind::ESub: {
            if (!alpha_eq_rec(a->content(), b->content(), bound)) return false;
            bound.emplace_back(a->name(), b->name());
            bool r = alpha_eq_rec(a->body(), b->body(), bound);
            bound.pop_back();
            return r;
        }
    }
    return false;
}

}  // namespace detail

// Equality up to consistent renaming of bound names (both Lam and ESub
// binders).
inline bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    std::vector<std::pair<Name, Name>> bound;
    return detail::alpha_eq_rec(a, b, bound);
}

// True iff `candidate` is alpha-equivalent to some structural subterm of
// `whole` (binders included).
inline bool is_subterm_of(const TermPtr& candidate, const TermPtr& whole) {
    if (alpha_eq(candidate, whole)) return true;
    if (whole->child_a() && is_subterm_of(candidate, whole->child_a())) return true;
    if (whole->child_b() && is_subterm_of(candidate, whole->child_b())) return true;
    return false;
}

}  // namespace lsc
