#pragma once

// The size-explosion family. With u = y x x:
//
//   t_0 = u          t_{n+1} = (\x. t_n) u
//   r_0 = u          r_{n+1} = y r_n r_n
//
// t_n has size 7n + 5 and reduces to its beta-normal form r_n in exactly n
// leftmost-outermost steps, but |r_n| = 8*2^n - 3: a linear derivation with
// an exponentially large result.

#include "lsc/term.hpp"

namespace lsc {

namespace detail {

inline TermPtr family_u() {
    Name x{"x", 0}, y{"y", 0};
    return app(app(var(y), var(x)), var(x));
}

}  // namespace detail

inline TermPtr family_term(std::size_t n) {
    TermPtr t = detail::family_u();
    for (std::size_t i = 0; i < n; ++i) t = app(lam(Name{"x", 0}, t), detail::family_u());
    return t;
}

inline TermPtr family_normal_form(std::size_t n) {
    TermPtr r = detail::family_u();
    for (std::size_t i = 0; i < n; ++i) r = app(app(var(Name{"y", 0}), r), r);
    return r;
}

// Exact closed forms of the sizes under the node-count convention.
inline std::size_t family_term_size(std::size_t n) { return 7 * n + 5; }

inline std::size_t family_normal_form_size(std::size_t n) {
    return 8 * (std::size_t(1) << n) - 3;
}

}  // namespace lsc
