#pragma once

// Unfolding turns explicit substitutions into implicit ones:
//
//   x|              = x                (t u)|        = t| u|
//   (\x. t)|        = \x. t|           (t[x <- u])|  = t|{x := u|}
//
// relative_unfold applies, from the hole outward, the substitution of every
// layer a shallow position crosses; unfold_context unfolds the surrounding
// context itself, with the hole kept inert. Unfolding is exponential in
// general, so every entry point takes a node cap and the result size is
// computed in compact form before anything is materialised.

#include <map>
#include <unordered_map>
#include <utility>

#include "lsc/position.hpp"
#include "lsc/term.hpp"

namespace lsc {

struct UnfoldLimitError : Error {
    std::size_t cap;

    explicit UnfoldLimitError(std::size_t c)
        : Error("unfolding exceeds the node cap of " + std::to_string(c)), cap(c) {}
};

inline constexpr std::size_t default_unfold_cap = 1000000;

namespace detail {

inline constexpr std::uint64_t size_saturation = std::uint64_t(1) << 62;

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return (r < a || r > size_saturation) ? size_saturation : r;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > size_saturation / b) return size_saturation;
    return a * b;
}

// Size and per-name free-occurrence counts of the unfolding, computed
// without materialising it (saturating arithmetic).
struct UnfoldedShape {
    std::uint64_t size = 0;
    std::map<Name, std::uint64_t> occ;
};

struct ShapeMemo {
    std::unordered_map<const Term*, UnfoldedShape> memo;

    const UnfoldedShape& of(const TermPtr& t) {
        auto it = memo.find(t.get());
        if (it != memo.end()) return it->second;
        UnfoldedShape s;
        switch (t->kind()) {
            case TermKind::Var:
                s.size = 1;
                s.occ[t->name()] = 1;
                break;
            case TermKind::Lam:
                s = of(t->body());
                s.size = sat_add(s.size, 1);
                s.occ.erase(t->name());
                break;
            case TermKind::App: {
                const UnfoldedShape& f = of(t->fun());
                const UnfoldedShape a = of(t->arg());
                s = f;
                s.size = sat_add(sat_add(s.size, a.size), 1);
                for (const auto& [n, k] : a.occ) s.occ[n] = sat_add(s.occ[n], k);
                break;
            }
            case TermKind::ESub: {
                s = of(t->body());
                const UnfoldedShape c = of(t->content());
                apply_layer(s, t->name(), c);
                break;
            }
        }
        return memo.emplace(t.get(), std::move(s)).first->second;
    }

    // shape of s{x := content-shape}: every free occurrence of x becomes a
    // copy of the content.
    static void apply_layer(UnfoldedShape& s, const Name& x, const UnfoldedShape& content) {
        auto it = s.occ.find(x);
        if (it == s.occ.end()) return;
        std::uint64_t k = it->second;
        s.occ.erase(it);
        s.size = sat_add(s.size - k, sat_mul(k, content.size));
        for (const auto& [n, c] : content.occ) s.occ[n] = sat_add(s.occ[n], sat_mul(k, c));
    }
};

inline TermPtr unfold_rec(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Var:
            return t;
        case TermKind::Lam:
            return lam(t->name(), unfold_rec(t->body()));
        case TermKind::App:
            return app(unfold_rec(t->fun()), unfold_rec(t->arg()));
        case TermKind::ESub: {
            TermPtr body = unfold_rec(t->body());
            if (!occurs_free(t->name(), body)) return body;
            return subst(body, t->name(), unfold_rec(t->content()));
        }
    }
    return t;
}

// The explicit-substitution layers a path crosses, listed from the hole
// towards the root. Throws on non-shallow paths.
inline std::vector<std::pair<Name, TermPtr>> crossed_layers(const TermPtr& host,
                                                            const Position& pos) {
    std::vector<std::pair<Name, TermPtr>> layers;
    TermPtr cur = host;
    for (Step s : pos.path) {
        switch (s) {
            case Step::LamBody:
                if (cur->kind() != TermKind::Lam) throw PathError("invalid path: expected Lam");
                cur = cur->body();
                break;
            case Step::AppLeft:
            case Step::AppRight:
                if (cur->kind() != TermKind::App) throw PathError("invalid path: expected App");
                cur = s == Step::AppLeft ? cur->fun() : cur->arg();
                break;
            case Step::ESubBody:
                if (cur->kind() != TermKind::ESub) throw PathError("invalid path: expected ESub");
                layers.emplace_back(cur->name(), cur->content());
                cur = cur->body();
                break;
            case Step::ESubContent:
                throw PathError("non-shallow position");
        }
    }
    std::reverse(layers.begin(), layers.end());
    return layers;
}

}  // namespace detail

// Size of unfold(t), without computing it (saturating).
inline std::uint64_t unfolded_size(const TermPtr& t) {
    detail::ShapeMemo m;
    return m.of(t).size;
}

// The pure term obtained by executing all explicit substitutions.
inline TermPtr unfold(const TermPtr& t, std::size_t cap = default_unfold_cap) {
    if (unfolded_size(t) > cap) throw UnfoldLimitError(cap);
    return detail::unfold_rec(t);
}

// Unfolding of `term` as if it sat at `pos` inside `host`: unfold it, then
// apply the substitution of each crossed layer from the hole outward, each
// content fully unfolded first.
inline TermPtr relative_unfold(const TermPtr& term, const TermPtr& host, const Position& pos,
                               std::size_t cap = default_unfold_cap) {
    auto layers = detail::crossed_layers(host, pos);

    detail::ShapeMemo memo;
    detail::UnfoldedShape shape = memo.of(term);
    for (const auto& [x, content] : layers)
        detail::ShapeMemo::apply_layer(shape, x, memo.of(content));
    if (shape.size > cap) throw UnfoldLimitError(cap);

    TermPtr result = unfold(term, cap);
    for (const auto& [x, content] : layers) {
        if (!occurs_free(x, result)) continue;
        result = subst(result, x, unfold(content, cap));
    }
    return result;
}

// The reserved hole marker used to represent pure contexts as terms. It is
// not expressible in the user grammar, so it can never collide.
inline const Name& hole_name() {
    static const Name n{"<>", 0};
    return n;
}

inline TermPtr hole() { return var(hole_name()); }

inline bool is_hole(const TermPtr& t) {
    return t->kind() == TermKind::Var && t->name() == hole_name();
}

namespace detail {

inline bool find_hole(const TermPtr& t, Position& cur, Position& out) {
    if (is_hole(t)) {
        out = cur;
        return true;
    }
    switch (t->kind()) {
        case TermKind::Var:
            return false;
        case TermKind::Lam:
            cur.path.push_back(Step::LamBody);
            if (find_hole(t->body(), cur, out)) return true;
            cur.path.pop_back();
            return false;
        case TermKind::App:
            cur.path.push_back(Step::AppLeft);
            if (find_hole(t->fun(), cur, out)) return true;
            cur.path.back() = Step::AppRight;
            if (find_hole(t->arg(), cur, out)) return true;
            cur.path.pop_back();
            return false;
        case TermKind::ESub:
            cur.path.push_back(Step::ESubBody);
            if (find_hole(t->body(), cur, out)) return true;
            cur.path.back() = Step::ESubContent;
            if (find_hole(t->content(), cur, out)) return true;
            cur.path.pop_back();
            return false;
    }
    return false;
}

}  // namespace detail

// Unfolds the context around a shallow position: returns the pure context
// (a term containing the hole marker) and the hole's position in it. For a
// shallow position the hole is neither duplicated nor erased, and the
// decomposition unfold(host) = C|<relative_unfold(subterm, host, pos)>
// holds at the image position.
inline std::pair<TermPtr, Position> unfold_context(const TermPtr& host, const Position& pos,
                                                   std::size_t cap = default_unfold_cap) {
    if (!pos.shallow()) throw PathError("non-shallow position");
    TermPtr marked = plug(host, pos, hole());
    TermPtr pure_ctx = unfold(marked, cap);
    Position cur, image;
    if (!detail::find_hole(pure_ctx, cur, image))
        throw Error("internal error: hole lost during context unfolding");
    return {pure_ctx, image};
}

}  // namespace lsc
