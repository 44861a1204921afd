#pragma once

// Random term generation and shrinking for the property suites. Pure terms
// are drawn over a pool of three free variables plus fresh bound ones,
// with production weights Var 4 / Lam 3 / App 3; LSC terms wrap random
// pure terms in up to three explicit substitution layers inserted at
// random shallow positions, usually capturing an existing free variable.

#include <functional>
#include <random>

#include "lsc/position.hpp"
#include "lsc/term.hpp"

namespace lsc {

using Rng = std::mt19937_64;

namespace detail {

inline const std::vector<Name>& free_pool() {
    static const std::vector<Name> pool{Name{"x", 0}, Name{"y", 0}, Name{"z", 0}};
    return pool;
}

struct PureGen {
    Rng& rng;
    std::uint64_t next_uid = 1;
    std::vector<Name> scope;

    Name fresh_binder() {
        static const char* texts[] = {"a", "b", "c", "d", "e", "f"};
        return Name{texts[next_uid % 6], next_uid++};
    }

    Name pick_var() {
        const auto& pool = free_pool();
        std::uniform_int_distribution<std::size_t> d(0, pool.size() + scope.size() - 1);
        std::size_t i = d(rng);
        return i < pool.size() ? pool[i] : scope[i - pool.size()];
    }

    // Builds a term of exactly `budget` nodes. The production weights
    // Var 4 / Lam 3 / App 3 apply among the productions that can still
    // fill the budget, so drawn sizes are honored instead of collapsing
    // towards leaves.
    TermPtr gen(std::size_t budget) {
        int choice;
        if (budget <= 1) {
            choice = 0;
        } else if (budget == 2) {
            choice = 1;
        } else {
            std::uniform_int_distribution<int> d(0, 5);
            choice = d(rng) < 3 ? 1 : 2;
        }
        switch (choice) {
            case 0:
                return var(pick_var());
            case 1: {
                Name b = fresh_binder();
                scope.push_back(b);
                TermPtr body = gen(budget - 1);
                scope.pop_back();
                return lam(b, body);
            }
            default: {
                std::uniform_int_distribution<std::size_t> d(1, budget - 2);
                std::size_t left = d(rng);
                TermPtr f = gen(left);
                TermPtr a = gen(budget - 1 - left);
                return app(f, a);
            }
        }
    }
};

}  // namespace detail

inline TermPtr gen_pure_term(Rng& rng, std::size_t max_size) {
    std::uniform_int_distribution<std::size_t> d(5, std::max<std::size_t>(5, max_size));
    detail::PureGen g{rng};
    return g.gen(d(rng));
}

// Wraps a random pure term in 0..3 shallow substitution layers. Each layer
// lands at a random shallow position; its binder captures a free variable
// of the wrapped subterm most of the time, and is fresh (a vacuous layer)
// otherwise.
inline TermPtr gen_lsc_term(Rng& rng, std::size_t max_size) {
    TermPtr t = gen_pure_term(rng, max_size);
    std::uniform_int_distribution<int> layers_d(0, 3);
    int layers = layers_d(rng);
    std::uint64_t uid = max_uid(t) + 1;
    for (int i = 0; i < layers; ++i) {
        auto positions = all_positions(t, /*shallow_only=*/true);
        std::uniform_int_distribution<std::size_t> pos_d(0, positions.size() - 1);
        const Position& at = positions[pos_d(rng)];
        TermPtr sub = resolve(t, at);

        NameSet fv = free_vars(sub);
        std::uniform_int_distribution<int> coin(0, 9);
        Name binder;
        TermPtr body = sub;
        if (!fv.empty() && coin(rng) < 7) {
            std::uniform_int_distribution<std::size_t> fv_d(0, fv.size() - 1);
            auto it = fv.begin();
            std::advance(it, fv_d(rng));
            binder = Name{it->text, uid++};
            body = subst(sub, *it, var(binder));
        } else {
            binder = Name{"w", uid++};
        }
        std::uniform_int_distribution<std::size_t> content_d(1, 8);
        detail::PureGen g{rng, uid};
        TermPtr content = g.gen(content_d(rng));
        uid = std::max(uid, max_uid(content) + 1);
        t = plug(t, at, esub(body, binder, content));
    }
    return t;
}

// Greedy structural shrinking: repeatedly replace the whole term by one of
// its subterms, or a subterm by one of its children or by a fresh
// variable, as long as the predicate still reports a failure.
inline TermPtr shrink_term(const TermPtr& t, const std::function<bool(const TermPtr&)>& fails,
                           std::size_t max_rounds = 64) {
    TermPtr cur = t;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        bool improved = false;
        auto positions = all_positions(cur, /*shallow_only=*/false);
        for (const Position& p : positions) {
            TermPtr sub = resolve(cur, p);
            std::vector<TermPtr> candidates;
            if (!p.path.empty()) candidates.push_back(sub);
            if (sub->child_a()) candidates.push_back(plug(cur, p, sub->child_a()));
            if (sub->child_b()) candidates.push_back(plug(cur, p, sub->child_b()));
            if (sub->kind() != TermKind::Var)
                candidates.push_back(plug(cur, p, var(Name{"q", 0})));
            for (const TermPtr& cand : candidates) {
                if (measure(cand).size >= measure(cur).size) continue;
                bool still = false;
                try {
                    still = fails(cand);
                } catch (const Error&) {
                    still = false;
                }
                if (still) {
                    cur = cand;
                    improved = true;
                    break;
                }
            }
            if (improved) break;
        }
        if (!improved) break;
    }
    return cur;
}

}  // namespace lsc
