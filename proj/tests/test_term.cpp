#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lsc/generate.hpp"
#include "lsc/syntax.hpp"
#include "lsc/term.hpp"

using namespace lsc;

TEST_CASE("parse builds the expected shapes") {
    TermPtr t = P("(\\x. x) y");
    REQUIRE(t->kind() == TermKind::App);
    CHECK(t->fun()->kind() == TermKind::Lam);
    CHECK(t->fun()->body()->kind() == TermKind::Var);
    CHECK(t->fun()->body()->name() == t->fun()->name());
    CHECK(t->arg()->name().text == "y");

    TermPtr e = P("(x x)[x <- t]");
    REQUIRE(e->kind() == TermKind::ESub);
    CHECK(e->body()->kind() == TermKind::App);
    CHECK(e->body()->fun()->name() == e->name());
    CHECK(e->body()->arg()->name() == e->name());
    CHECK(e->content()->name().text == "t");
}

TEST_CASE("parse reports positions on syntax errors") {
    CHECK_THROWS_AS(parse("\\x."), ParseError);
    CHECK_THROWS_AS(parse("(x"), ParseError);
    CHECK_THROWS_AS(parse("x)"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x [y <-"), ParseError);
    try {
        parse("x @");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 3);
    }
}

TEST_CASE("substitution brackets bind tighter than application and nest inward") {
    // x y[y <- z] applies x to the closed bracket, not (x y) to it
    TermPtr t = P("x y[y <- z]");
    REQUIRE(t->kind() == TermKind::App);
    CHECK(t->arg()->kind() == TermKind::ESub);

    // the bracket captures the lambda-bound occurrence: \x. x[x <- t]
    TermPtr s = P("\\x. x[x <- t]");
    const TermPtr& es = s->body();
    REQUIRE(es->kind() == TermKind::ESub);
    CHECK(es->body()->name() == es->name());
    CHECK(occurs_free(s->name(), s->body()) == false);
}

TEST_CASE("print uses minimal parentheses") {
    CHECK(print(P("\\x. x")) == "\\x. x");
    CHECK(print(P("(x x)[x <- t]")) == "(x x)[x <- t]");
    CHECK(print(P("y x x")) == "y x x");
    CHECK(print(P("y (x x)")) == "y (x x)");
    CHECK(print(P("\\x. \\y. x y")) == "\\x. \\y. x y");
    CHECK(print(P("(\\x. x) y")) == "(\\x. x) y");
    CHECK(print(P("x[x <- \\y. y] z")) == "x[x <- \\y. y] z");
    CHECK(print(P("x (y[y <- z])")) == "x y[y <- z]");
}

TEST_CASE("printing freshened names never collides") {
    // binder freshened against a free variable of the same text
    TermPtr t = esub(app(var(Name{"x", 0}), var(Name{"x", 0})), Name{"x", 0}, var(Name{"x", 0}));
    // the constructor renames the binder away from the content
    CHECK(free_vars(t) == NameSet{Name{"x", 0}});
    std::string s = print(t);
    CHECK(alpha_eq(parse(s), t));

    // two distinct binders sharing a text print distinctly
    TermPtr u = app(lam(Name{"v", 1}, var(Name{"v", 1})), lam(Name{"v", 2}, var(Name{"v", 2})));
    CHECK(alpha_eq(parse(print(u)), u));
}

TEST_CASE("measure follows the node-count convention") {
    CHECK(measure(var(Name{"x", 0})) == Measure{1, 0, true});
    CHECK(measure(P("y x x")) == Measure{5, 0, true});
    CHECK(measure(P("(x x)[x <- \\y. y]")) == Measure{6, 1, false});
}

TEST_CASE("free_vars treats both binders correctly") {
    CHECK(free_vars(P("\\x. x")).empty());
    CHECK(free_vars(P("(x y)[y <- x]")) == NameSet{Name{"x", 0}});
    CHECK(free_vars(P("y x x")) == NameSet{Name{"x", 0}, Name{"y", 0}});
}

TEST_CASE("subst: examples") {
    TermPtr u = P("y x x");
    CHECK(alpha_eq(subst(u, Name{"x", 0}, P("y x x")), P("y (y x x) (y x x)")));

    TermPtr shadowed = P("\\x. x");
    CHECK(alpha_eq(subst(shadowed, Name{"x", 0}, P("z")), shadowed));

    TermPtr capture = subst(P("\\y. x"), Name{"x", 0}, P("y"));
    CHECK(alpha_eq(capture, P("\\w. y")));
    CHECK(print(capture) != "\\y. y");  // the binder moved out of the way
}

TEST_CASE("alpha_eq: examples") {
    CHECK(alpha_eq(P("(x y)[y <- t]"), P("(x z)[z <- t]")));
    CHECK(alpha_eq(P("\\x. x"), P("\\y. y")));
    CHECK_FALSE(alpha_eq(P("\\x. x"), P("\\x. y")));
    CHECK_FALSE(alpha_eq(P("x[x <- y]"), P("x[x <- z]")));
    // binder correspondence must be consistent
    CHECK_FALSE(alpha_eq(P("\\x. \\y. x"), P("\\x. \\y. y")));
}

TEST_CASE("is_subterm_of: examples") {
    CHECK(is_subterm_of(P("x"), P("y x x")));
    CHECK(is_subterm_of(P("y x x"), P("(\\x. y x x) (y x x)")));
    CHECK_FALSE(is_subterm_of(P("\\z. z"), P("y x x")));
    CHECK(is_subterm_of(P("\\y. y"), P("x[x <- \\w. w]")));
}

TEST_CASE("round trip and substitution laws on generated terms") {
    Rng rng(20240817);
    for (int i = 0; i < 200; ++i) {
        TermPtr t = i % 2 ? gen_lsc_term(rng, 30) : gen_pure_term(rng, 30);
        CAPTURE(print(t));
        CHECK(alpha_eq(parse(print(t)), t));

        Measure m = measure(t);
        if (t->kind() == TermKind::App)
            CHECK(m.size == 1 + measure(t->fun()).size + measure(t->arg()).size);
        if (t->kind() == TermKind::ESub)
            CHECK(m.size == 1 + measure(t->body()).size + measure(t->content()).size);
        CHECK(m.pure == (m.es_count == 0));

        Name x{"x", 0};
        CHECK(alpha_eq(subst(t, x, var(x)), t));

        Name unused{"nowhere", 0};
        CHECK(alpha_eq(subst(t, unused, P("y y")), t));

        NameSet fv = free_vars(t);
        if (fv.count(x)) {
            TermPtr value = P("z (\\w. w)");
            NameSet expected = fv;
            expected.erase(x);
            NameSet value_fv = free_vars(value);
            expected.insert(value_fv.begin(), value_fv.end());
            CHECK(free_vars(subst(t, x, value)) == expected);
        }
    }
}

TEST_CASE("esub constructor enforces the binder convention") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        TermPtr t = gen_lsc_term(rng, 25);
        // every ESub in a constructed term satisfies binder not-free-in-content
        std::function<void(const TermPtr&)> walk = [&](const TermPtr& n) {
            if (n->kind() == TermKind::ESub) CHECK_FALSE(occurs_free(n->name(), n->content()));
            if (n->child_a()) walk(n->child_a());
            if (n->child_b()) walk(n->child_b());
        };
        walk(t);
    }
}
