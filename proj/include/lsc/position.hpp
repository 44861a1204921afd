#pragma once

// Positions are root-to-hole paths into a term. They carry the
// left-to-right outside-in order on contexts: a proper prefix is strictly
// smaller, and at the first diverging step the child order is
// LamBody; AppLeft < AppRight; ESubBody < ESubContent. A path is shallow
// when it never enters the content of an explicit substitution.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "lsc/term.hpp"

namespace lsc {

enum class Step { LamBody, AppLeft, AppRight, ESubBody, ESubContent };

struct PathError : Error {
    using Error::Error;
};

struct Position {
    std::vector<Step> path;

    bool shallow() const {
        for (Step s : path)
            if (s == Step::ESubContent) return false;
        return true;
    }

    bool is_prefix_of(const Position& other) const {
        if (path.size() > other.path.size()) return false;
        for (std::size_t i = 0; i < path.size(); ++i)
            if (path[i] != other.path[i]) return false;
        return true;
    }

    Position prefix(std::size_t len) const {
        return Position{std::vector<Step>(path.begin(), path.begin() + len)};
    }

    Position extended(Step s) const {
        Position p = *this;
        p.path.push_back(s);
        return p;
    }

    friend bool operator==(const Position&, const Position&) = default;
};

inline std::string to_string(Step s) {
    switch (s) {
        case Step::LamBody: return "λ";
        case Step::AppLeft: return "·L";
        case Step::AppRight: return "·R";
        case Step::ESubBody: return "[b]";
        case Step::ESubContent: return "[c]";
    }
    return "?";
}

// Slash-separated path, e.g. "λ/·L/·R/[b]/[c]"; the empty path prints "ε".
inline std::string to_string(const Position& p) {
    if (p.path.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < p.path.size(); ++i) {
        if (i) out += '/';
        out += to_string(p.path[i]);
    }
    return out;
}

// Subterm at a position. Throws PathError when a step does not match the
// node shape.
inline TermPtr resolve(const TermPtr& t, const Position& pos) {
    TermPtr cur = t;
    for (Step s : pos.path) {
        switch (s) {
            case Step::LamBody:
                if (cur->kind() != TermKind::Lam) throw PathError("invalid path: expected Lam");
                cur = cur->body();
                break;
            case Step::AppLeft:
                if (cur->kind() != TermKind::App) throw PathError("invalid path: expected App");
                cur = cur->fun();
                break;
            case Step::AppRight:
                if (cur->kind() != TermKind::App) throw PathError("invalid path: expected App");
                cur = cur->arg();
                break;
            case Step::ESubBody:
                if (cur->kind() != TermKind::ESub) throw PathError("invalid path: expected ESub");
                cur = cur->body();
                break;
            case Step::ESubContent:
                if (cur->kind() != TermKind::ESub) throw PathError("invalid path: expected ESub");
                cur = cur->content();
                break;
        }
    }
    return cur;
}

// Inverse write operation: replace the subterm at `pos` by `replacement`.
// Performs no alpha-adjustment; callers handle capture explicitly.
inline TermPtr plug(const TermPtr& t, const Position& pos, const TermPtr& replacement,
                    std::size_t depth = 0) {
    if (depth == pos.path.size()) return replacement;
    Step s = pos.path[depth];
    switch (s) {
        case Step::LamBody:
            if (t->kind() != TermKind::Lam) throw PathError("invalid path: expected Lam");
            return lam(t->name(), plug(t->body(), pos, replacement, depth + 1));
        case Step::AppLeft:
            if (t->kind() != TermKind::App) throw PathError("invalid path: expected App");
            return app(plug(t->fun(), pos, replacement, depth + 1), t->arg());
        case Step::AppRight:
            if (t->kind() != TermKind::App) throw PathError("invalid path: expected App");
            return app(t->fun(), plug(t->arg(), pos, replacement, depth + 1));
        case Step::ESubBody:
            if (t->kind() != TermKind::ESub) throw PathError("invalid path: expected ESub");
            return esub(plug(t->body(), pos, replacement, depth + 1), t->name(), t->content());
        case Step::ESubContent:
            if (t->kind() != TermKind::ESub) throw PathError("invalid path: expected ESub");
            return esub(t->body(), t->name(), plug(t->content(), pos, replacement, depth + 1));
    }
    throw PathError("invalid path");
}

// The left-to-right outside-in order: lexicographic on paths, prefixes
// first. Total on the positions of any one term.
inline std::strong_ordering compare_lo(const Position& a, const Position& b) {
    std::size_t n = std::min(a.path.size(), b.path.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.path[i] != b.path[i])
            return static_cast<int>(a.path[i]) < static_cast<int>(b.path[i])
                       ? std::strong_ordering::less
                       : std::strong_ordering::greater;
    }
    if (a.path.size() == b.path.size()) return std::strong_ordering::equal;
    return a.path.size() < b.path.size() ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
}

// Applicative position: ascending from the hole, zero or more ESubBody
// steps immediately followed by an AppLeft step (the hole sits in function
// position under a substitution-context spine).
inline bool is_applicative(const TermPtr& t, const Position& pos) {
    if (!pos.shallow()) throw PathError("non-shallow position");
    resolve(t, pos);  // validate
    std::size_t i = pos.path.size();
    while (i > 0 && pos.path[i - 1] == Step::ESubBody) --i;
    return i > 0 && pos.path[i - 1] == Step::AppLeft;
}

// Peels the maximal stack of outer explicit substitutions:
// term = L<core> with the spine listed inside-out and core not an ESub.
inline std::pair<TermPtr, std::vector<std::pair<Name, TermPtr>>> strip_subst_spine(
    const TermPtr& t) {
    std::vector<std::pair<Name, TermPtr>> spine;
    TermPtr core = t;
    while (core->kind() == TermKind::ESub) {
        spine.emplace_back(core->name(), core->content());
        core = core->body();
    }
    std::reverse(spine.begin(), spine.end());
    return {core, std::move(spine)};
}

// All positions of a term in ascending left-to-right outside-in order.
inline void all_positions_rec(const TermPtr& t, Position& cur, bool shallow_only,
                              std::vector<Position>& out) {
    out.push_back(cur);
    switch (t->kind()) {
        case TermKind::Var:
            return;
        case TermKind::Lam:
            cur.path.push_back(Step::LamBody);
            all_positions_rec(t->body(), cur, shallow_only, out);
            cur.path.pop_back();
            return;
        case TermKind::App:
            cur.path.push_back(Step::AppLeft);
            all_positions_rec(t->fun(), cur, shallow_only, out);
            cur.path.back() = Step::AppRight;
            all_positions_rec(t->arg(), cur, shallow_only, out);
            cur.path.pop_back();
            return;
        case TermKind::ESub:
            cur.path.push_back(Step::ESubBody);
            all_positions_rec(t->body(), cur, shallow_only, out);
            cur.path.pop_back();
            if (!shallow_only) {
                cur.path.push_back(Step::ESubContent);
                all_positions_rec(t->content(), cur, shallow_only, out);
                cur.path.pop_back();
            }
            return;
    }
}

inline std::vector<Position> all_positions(const TermPtr& t, bool shallow_only = false) {
    std::vector<Position> out;
    Position cur;
    all_positions_rec(t, cur, shallow_only, out);
    return out;
}

struct RedexInfo {
    enum class Kind { DB, LS };

    Kind kind;
    Position position;        // dB: the application node; ls: the variable occurrence
    Position binder_position; // ls: the binding explicit substitution
    Name bound_name;          // ls
    std::size_t spine_length = 0;  // dB: layers of L between application and abstraction
};

inline std::string to_string(RedexInfo::Kind k) {
    return k == RedexInfo::Kind::DB ? "dB" : "ls";
}

namespace detail {

struct BinderFrame {
    Name binder;
    bool from_es;
    std::size_t node_depth;  // path length of the binding node
};

inline void list_redexes_rec(const TermPtr& t, Position& cur,
                             std::vector<BinderFrame>& scopes, bool shallow_only,
                             std::vector<RedexInfo>& out) {
    switch (t->kind()) {
        case TermKind::Var: {
            for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
                if (it->binder != t->name()) continue;
                if (it->from_es) {
                    RedexInfo r;
                    r.kind = RedexInfo::Kind::LS;
                    r.position = cur;
                    r.binder_position = cur.prefix(it->node_depth);
                    r.bound_name = t->name();
                    out.push_back(std::move(r));
                }
                return;  // nearest binder decides; Lam-bound or free: no redex
            }
            return;
        }
        case TermKind::Lam:
            scopes.push_back({t->name(), false, cur.path.size()});
            cur.path.push_back(Step::LamBody);
            list_redexes_rec(t->body(), cur, scopes, shallow_only, out);
            cur.path.pop_back();
            scopes.pop_back();
            return;
        case TermKind::App: {
            auto [core, spine] = strip_subst_spine(t->fun());
            if (core->kind() == TermKind::Lam) {
                RedexInfo r;
                r.kind = RedexInfo::Kind::DB;
                r.position = cur;
                r.spine_length = spine.size();
                out.push_back(std::move(r));
            }
            cur.path.push_back(Step::AppLeft);
            list_redexes_rec(t->fun(), cur, scopes, shallow_only, out);
            cur.path.back() = Step::AppRight;
            list_redexes_rec(t->arg(), cur, scopes, shallow_only, out);
            cur.path.pop_back();
            return;
        }
        case TermKind::ESub: {
            scopes.push_back({t->name(), true, cur.path.size()});
            cur.path.push_back(Step::ESubBody);
            list_redexes_rec(t->body(), cur, scopes, shallow_only, out);
            cur.path.pop_back();
            scopes.pop_back();
            if (!shallow_only) {
                // the binder does not scope over its own content
                cur.path.push_back(Step::ESubContent);
                list_redexes_rec(t->content(), cur, scopes, shallow_only, out);
                cur.path.pop_back();
            }
            return;
        }
    }
}

}  // namespace detail

// All dB and ls redexes, in ascending left-to-right outside-in order of
// their positions (for ls redexes the key is the variable occurrence).
// With shallow_only, redexes under substitution contents are not reported.
inline std::vector<RedexInfo> list_redexes(const TermPtr& t, bool shallow_only = true) {
    std::vector<RedexInfo> out;
    Position cur;
    std::vector<detail::BinderFrame> scopes;
    detail::list_redexes_rec(t, cur, scopes, shallow_only, out);
    return out;
}

}  // namespace lsc
