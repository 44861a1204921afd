#pragma once

// The product analysis nature × has-redex × apvars × freevars of a term's
// unfolding, computed in three forms: on pure terms directly
// (analyze_explicit), on terms with explicit substitutions without
// unfolding them (analyze_compact), and relative to the layers crossed by a
// shallow position (analyze_relative). compact_equal decides
// alpha-equivalence of unfoldings, also without materialising them.

#include <functional>
#include <memory>
#include <unordered_map>
#include <variant>

#include "lsc/position.hpp"
#include "lsc/term.hpp"
#include "lsc/unfold.hpp"

namespace lsc {

struct Nature {
    enum class Tag { Var, Lam, App };

    Tag tag = Tag::App;
    Name name;  // meaningful only for Tag::Var

    static Nature of_var(Name n) { return {Tag::Var, std::move(n)}; }
    static Nature of_lam() { return {Tag::Lam, {}}; }
    static Nature of_app() { return {Tag::App, {}}; }

    bool is_var(const Name& n) const { return tag == Tag::Var && name == n; }

    friend bool operator==(const Nature& a, const Nature& b) {
        if (a.tag != b.tag) return false;
        return a.tag != Tag::Var || a.name == b.name;
    }
};

inline std::string to_string(const Nature& n) {
    switch (n.tag) {
        case Nature::Tag::Var: return "var(" + n.name.text + ")";
        case Nature::Tag::Lam: return "lam";
        case Nature::Tag::App: return "app";
    }
    return "?";
}

struct AnalysisTuple {
    Nature nature;
    bool has_redex = false;
    NameSet apvars;    // free variables occurring in function position
    NameSet freevars;

    friend bool operator==(const AnalysisTuple&, const AnalysisTuple&) = default;
};

// s if x is in r, empty otherwise.
inline NameSet guarded_restrict(const NameSet& s, const Name& x, const NameSet& r) {
    return r.count(x) ? s : NameSet{};
}

// Analysis of a pure term by structural recursion.
inline AnalysisTuple analyze_explicit(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Var:
            return {Nature::of_var(t->name()), false, {}, {t->name()}};
        case TermKind::Lam: {
            AnalysisTuple b = analyze_explicit(t->body());
            b.nature = Nature::of_lam();
            b.apvars.erase(t->name());
            b.freevars.erase(t->name());
            return b;
        }
        case TermKind::App: {
            AnalysisTuple f = analyze_explicit(t->fun());
            AnalysisTuple a = analyze_explicit(t->arg());
            AnalysisTuple r;
            r.nature = Nature::of_app();
            r.has_redex = f.has_redex || a.has_redex || f.nature.tag == Nature::Tag::Lam;
            r.apvars = f.apvars;
            r.apvars.insert(a.apvars.begin(), a.apvars.end());
            if (f.nature.tag == Nature::Tag::Var) r.apvars.insert(f.nature.name);
            r.freevars = f.freevars;
            r.freevars.insert(a.freevars.begin(), a.freevars.end());
            return r;
        }
        case TermKind::ESub:
            throw NotPureError();
    }
    return {};
}

namespace detail {

inline NameSet set_minus(NameSet s, const Name& x) {
    s.erase(x);
    return s;
}

inline void set_union_into(NameSet& into, const NameSet& other) {
    into.insert(other.begin(), other.end());
}

// Combine the tuple of a body (or of a hole seen through part of a
// context) with the tuple of a substitution content for binder x. This is
// the substitution clause shared by the compact and the context-relative
// analyses: the unfolding it models is body{x := content}.
inline AnalysisTuple tuple_under_subst(const AnalysisTuple& body, const Name& x,
                                       const AnalysisTuple& content) {
    AnalysisTuple r;
    r.nature = body.nature.is_var(x) ? content.nature : body.nature;
    // A redex survives from the body, arrives with the content when x is
    // actually substituted, or is created by placing an abstraction into an
    // applied occurrence of x.
    r.has_redex = body.has_redex || (content.has_redex && body.freevars.count(x)) ||
                  (content.nature.tag == Nature::Tag::Lam && body.apvars.count(x));
    r.apvars = set_minus(body.apvars, x);
    set_union_into(r.apvars, guarded_restrict(content.apvars, x, body.freevars));
    if (content.nature.tag == Nature::Tag::Var && body.apvars.count(x))
        r.apvars.insert(content.nature.name);
    r.freevars = set_minus(body.freevars, x);
    set_union_into(r.freevars, guarded_restrict(content.freevars, x, body.freevars));
    return r;
}

struct CompactAnalyzer {
    std::unordered_map<const Term*, AnalysisTuple> memo;

    const AnalysisTuple& of(const TermPtr& t) {
        auto it = memo.find(t.get());
        if (it != memo.end()) return it->second;
        AnalysisTuple r;
        switch (t->kind()) {
            case TermKind::Var:
                r = {Nature::of_var(t->name()), false, {}, {t->name()}};
                break;
            case TermKind::Lam:
                r = of(t->body());
                r.nature = Nature::of_lam();
                r.apvars.erase(t->name());
                r.freevars.erase(t->name());
                break;
            case TermKind::App: {
                const AnalysisTuple& f = of(t->fun());
                const AnalysisTuple a = of(t->arg());
                r.nature = Nature::of_app();
                r.has_redex = f.has_redex || a.has_redex || f.nature.tag == Nature::Tag::Lam;
                r.apvars = f.apvars;
                set_union_into(r.apvars, a.apvars);
                if (f.nature.tag == Nature::Tag::Var) r.apvars.insert(f.nature.name);
                r.freevars = f.freevars;
                set_union_into(r.freevars, a.freevars);
                break;
            }
            case TermKind::ESub: {
                const AnalysisTuple body = of(t->body());
                const AnalysisTuple content = of(t->content());
                r = tuple_under_subst(body, t->name(), content);
                break;
            }
        }
        return memo.emplace(t.get(), std::move(r)).first->second;
    }
};

}  // namespace detail

// Analysis of unfold(t) without computing the unfolding; memoized per node.
inline AnalysisTuple analyze_compact(const TermPtr& t) {
    detail::CompactAnalyzer a;
    return a.of(t);
}

// Analysis of relative_unfold(term, host, pos) without unfolding: walk the
// path from the hole to the root, Lam and App layers are transparent, and
// each crossed substitution layer combines with the compact analysis of
// its content.
inline AnalysisTuple analyze_relative(const TermPtr& term, const TermPtr& host,
                                      const Position& pos) {
    auto layers = detail::crossed_layers(host, pos);
    detail::CompactAnalyzer a;
    AnalysisTuple r = a.of(term);
    for (const auto& [x, content] : layers)
        r = detail::tuple_under_subst(r, x, a.of(content));
    return r;
}

namespace detail {

// Lazy-substitution environments for comparing unfoldings. An entry maps a
// name either to the de-Bruijn-style level of a lambda both sides crossed
// together, or to a closure (content, environment at its substitution).
struct CmpEnv;
using CmpEnvPtr = std::shared_ptr<const CmpEnv>;

struct CmpClosure {
    TermPtr term;
    CmpEnvPtr env;
};

struct CmpEnv {
    Name name;
    bool is_level;
    std::size_t level;
    CmpClosure closure;
    CmpEnvPtr next;
};

inline const CmpEnv* cmp_lookup(const CmpEnvPtr& env, const Name& n) {
    for (const CmpEnv* e = env.get(); e; e = e->next.get())
        if (e->name == n) return e;
    return nullptr;
}

inline CmpEnvPtr cmp_bind_level(const CmpEnvPtr& env, const Name& n, std::size_t level) {
    return std::make_shared<CmpEnv>(CmpEnv{n, true, level, {}, env});
}

inline CmpEnvPtr cmp_bind_closure(const CmpEnvPtr& env, const Name& n, CmpClosure c) {
    return std::make_shared<CmpEnv>(CmpEnv{n, false, 0, std::move(c), env});
}

struct CmpKey {
    const Term* t1;
    const CmpEnv* e1;
    const Term* t2;
    const CmpEnv* e2;

    friend bool operator==(const CmpKey&, const CmpKey&) = default;
};

struct CmpKeyHash {
    std::size_t operator()(const CmpKey& k) const {
        auto h = std::hash<const void*>{};
        std::size_t r = h(k.t1);
        r = r * 31 + h(k.e1);
        r = r * 31 + h(k.t2);
        r = r * 31 + h(k.e2);
        return r;
    }
};

struct UnfoldingComparer {
    std::unordered_map<CmpKey, bool, CmpKeyHash> memo;

    bool equal(const TermPtr& t1, const CmpEnvPtr& e1, const TermPtr& t2, const CmpEnvPtr& e2,
               std::size_t level) {
        CmpKey key{t1.get(), e1.get(), t2.get(), e2.get()};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool r = compute(t1, e1, t2, e2, level);
        memo.emplace(key, r);
        return r;
    }

    bool compute(const TermPtr& t1, const CmpEnvPtr& e1, const TermPtr& t2, const CmpEnvPtr& e2,
                 std::size_t level) {
        // substitutions are transparent: push a closure over the current
        // environment, so outer pending substitutions reach the content too
        if (t1->kind() == TermKind::ESub)
            return equal(t1->body(), cmp_bind_closure(e1, t1->name(), {t1->content(), e1}),
                         t2, e2, level);
        if (t2->kind() == TermKind::ESub)
            return equal(t1, e1, t2->body(),
                         cmp_bind_closure(e2, t2->name(), {t2->content(), e2}), level);

        if (t1->kind() == TermKind::Var) {
            const CmpEnv* e = cmp_lookup(e1, t1->name());
            if (e && !e->is_level) return equal(e->closure.term, e->closure.env, t2, e2, level);
        }
        if (t2->kind() == TermKind::Var) {
            const CmpEnv* e = cmp_lookup(e2, t2->name());
            if (e && !e->is_level) return equal(t1, e1, e->closure.term, e->closure.env, level);
        }

        if (t1->kind() != t2->kind()) return false;
        switch (t1->kind()) {
            case TermKind::Var: {
                const CmpEnv* b1 = cmp_lookup(e1, t1->name());
                const CmpEnv* b2 = cmp_lookup(e2, t2->name());
                if (b1 && b2) return b1->level == b2->level;
                if (!b1 && !b2) return t1->name() == t2->name();
                return false;
            }
            case TermKind::Lam:
                return equal(t1->body(), cmp_bind_level(e1, t1->name(), level),
                             t2->body(), cmp_bind_level(e2, t2->name(), level), level + 1);
            case TermKind::App:
                return equal(t1->fun(), e1, t2->fun(), e2, level) &&
                       equal(t1->arg(), e1, t2->arg(), e2, level);
            default:
                return false;
        }
    }
};

}  // namespace detail

// True iff unfold(a) and unfold(b) are alpha-equivalent, decided without
// materialising either unfolding: a memoized simultaneous descent over
// (node, pending-substitution environment) pairs, with crossed binders
// identified by shared levels.
inline bool compact_equal(const TermPtr& a, const TermPtr& b) {
    detail::UnfoldingComparer c;
    return c.equal(a, nullptr, b, nullptr, 0);
}

}  // namespace lsc
