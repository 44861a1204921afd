#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lsc/beta.hpp"
#include "lsc/engine.hpp"
#include "lsc/family.hpp"
#include "lsc/generate.hpp"
#include "lsc/unfold.hpp"

using namespace lsc;

TEST_CASE("unfold executes substitutions as implicit ones") {
    CHECK(aeq(unfold(P("(x (y z))[y <- x][x <- z]")), "z (z z)"));
    TermPtr id = P("\\x. x");
    CHECK(alpha_eq(unfold(id), id));
    CHECK(aeq(unfold(P("x[x <- y]")), "y"));
    // vacuous substitutions disappear
    CHECK(aeq(unfold(P("y[x <- w w]")), "y"));
}

TEST_CASE("unfolding the LOU normal form of the family recovers the beta normal form") {
    DerivationTrace trace = normalize(family_term(2), Strategy::LOU, 100);
    CHECK_FALSE(trace.exhausted);
    CHECK(aeq(unfold(trace.final_term), "y (y (y x x) (y x x)) (y (y x x) (y x x))"));
    CHECK(alpha_eq(unfold(trace.final_term), family_normal_form(2)));
}

TEST_CASE("unfolded_size matches the materialised size and powers the cap") {
    Rng rng(11);
    for (int i = 0; i < 80; ++i) {
        TermPtr t = gen_lsc_term(rng, 30);
        std::uint64_t predicted = unfolded_size(t);
        if (predicted > 100000) continue;
        CHECK(predicted == measure(unfold(t)).size);
    }

    // x[x <- y y][y <- z z]... doubles at every layer
    TermPtr t = P("x");
    std::vector<std::string> vars{"x", "y", "z", "u", "v", "w", "p", "q", "r", "s"};
    for (std::size_t i = 0; i + 1 < vars.size(); ++i)
        t = esub(t, Name{vars[i], 0}, app(var(Name{vars[i + 1], 0}), var(Name{vars[i + 1], 0})));
    CHECK(unfolded_size(t) == (std::size_t(1) << 10) - 1);
    CHECK_THROWS_AS(unfold(t, 100), UnfoldLimitError);
    CHECK_NOTHROW(unfold(t, 2000));
}

TEST_CASE("relative_unfold applies crossed layers from the hole outward") {
    // (x y) sitting in the context (<>[y <- x] t)[x <- \z. z z]
    TermPtr host = P("((x y)[y <- x] t)[x <- \\z. z z]");
    Position p = pos({Step::ESubBody, Step::AppLeft, Step::ESubBody});
    CHECK(print(unfold(resolve(host, p))) == "x y");
    CHECK(aeq(relative_unfold(resolve(host, p), host, p), "(\\z. z z) (\\z. z z)"));

    // at the empty context the relative unfolding is the plain unfolding
    TermPtr closed = P("(\\x. x) (\\y. y)");
    CHECK(alpha_eq(relative_unfold(closed, closed, pos({})), unfold(closed)));

    // substituting "z w" for x lands one layer away from a beta-redex
    TermPtr host2 = P("(t x)[x <- z w][z <- \\y. y]");
    TermPtr content = resolve(host2, pos({Step::ESubBody}))->content();
    Position occ = pos({Step::ESubBody, Step::ESubBody, Step::AppRight});
    TermPtr rel = relative_unfold(content, host2, occ);
    CHECK(aeq(rel, "(\\y. y) w"));
    CHECK(contains_beta_redex(rel));

    CHECK_THROWS_AS(relative_unfold(P("x"), P("t[z <- u]"), pos({Step::ESubContent})), PathError);
}

TEST_CASE("unfold_context: examples") {
    // (<> y)[y <- z]  ->  context <> z, image at the function position
    TermPtr host = P("(q y)[y <- z]");
    auto [ctx, image] = unfold_context(host, pos({Step::ESubBody, Step::AppLeft}));
    CHECK(image == pos({Step::AppLeft}));
    CHECK(is_hole(resolve(ctx, image)));
    CHECK(print(resolve(ctx, pos({Step::AppRight}))) == "z");

    // pure host: unchanged
    TermPtr pure_host = P("\\x. x (y y)");
    auto [ctx2, image2] =
        unfold_context(pure_host, pos({Step::LamBody, Step::AppRight, Step::AppLeft}));
    CHECK(image2 == pos({Step::LamBody, Step::AppRight, Step::AppLeft}));
    CHECK(alpha_eq(plug(ctx2, image2, resolve(pure_host, image2)), pure_host));

    // applicativity of the hole survives context unfolding, both ways
    TermPtr host3 = P("(\\x. q)[y <- u] r");
    Position p3 = pos({Step::AppLeft, Step::ESubBody, Step::LamBody});
    auto [ctx3, image3] = unfold_context(host3, p3);
    CHECK(is_applicative(host3, p3) == is_applicative(ctx3, image3));
    TermPtr host4 = P("(q[y <- u]) r");
    Position p4 = pos({Step::AppLeft, Step::ESubBody});
    REQUIRE(is_applicative(host4, p4));
    auto [ctx4, image4] = unfold_context(host4, p4);
    CHECK(is_applicative(ctx4, image4));
}

TEST_CASE("decomposition law on generated terms") {
    Rng rng(404);
    int checked = 0;
    for (int i = 0; i < 150 && checked < 120; ++i) {
        TermPtr t = gen_lsc_term(rng, 30);
        auto positions = all_positions(t, /*shallow_only=*/true);
        std::uniform_int_distribution<std::size_t> pick(0, positions.size() - 1);
        Position p = positions[pick(rng)];
        try {
            TermPtr whole = unfold(t, 100000);
            auto [ctx, image] = unfold_context(t, p, 100000);
            TermPtr rel = relative_unfold(resolve(t, p), t, p, 100000);
            CHECK(is_pure(ctx));
            CHECK(alpha_eq(whole, plug(ctx, image, rel)));
            ++checked;
        } catch (const UnfoldLimitError&) {
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("ls steps leave the unfolding invariant") {
    Rng rng(777);
    int checked = 0;
    for (int i = 0; i < 120 && checked < 80; ++i) {
        TermPtr t = gen_lsc_term(rng, 25);
        for (const RedexInfo& r : list_redexes(t)) {
            if (r.kind != RedexInfo::Kind::LS) continue;
            try {
                CHECK(alpha_eq(unfold(t, 100000), unfold(apply_redex(t, r), 100000)));
                ++checked;
            } catch (const UnfoldLimitError&) {
            }
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("the hole marker is not parseable user syntax") {
    CHECK_THROWS_AS(parse("<>"), ParseError);
    CHECK(print(hole()) == "<>");
}
