#include "doctest.h"

#include "test_support.hpp"

#include "reeb/constraint.hpp"
#include "reeb/errors.hpp"

using namespace reeb;
using reeb::testing::Rng;

namespace {

// p0^2 -> m^2 + p1^2 over {p0, p1, m}
ContextPtr shell_like() {
    auto u = Universe::make({"p0", "p1", "m"});
    Poly rhs = Poly::variable(u, "m").pow(2) + Poly::variable(u, "p1").pow(2);
    return ConstraintContext::make(u, {{0, rhs}});
}

} // namespace

TEST_CASE("reduction eliminates even powers and is idempotent") {
    auto ctx = shell_like();
    auto u = ctx->universe();
    Poly p0 = Poly::variable(u, "p0"), p1 = Poly::variable(u, "p1"), m = Poly::variable(u, "m");

    CHECK(ctx->reduce(p0 * p0) == m * m + p1 * p1);
    // odd powers keep one bare factor: p0^3 -> p0 (m^2 + p1^2)
    CHECK(ctx->reduce(p0.pow(3)) == p0 * (m * m + p1 * p1));
    CHECK(ctx->reduce(p0) == p0);

    Poly big = (p0 + p1).pow(4) - m.pow(3) * p0;
    Poly once = ctx->reduce(big);
    CHECK(ctx->reduce(once) == once);
    CHECK(once.degree_in(0) <= 1);
}

TEST_CASE("solved-variable bookkeeping") {
    auto ctx = shell_like();
    CHECK(ctx->is_solved(0));
    CHECK(!ctx->is_solved(1));
    CHECK(ctx->rule_for(0) != nullptr);
    CHECK(ctx->rule_for(2) == nullptr);
    CHECK(!ConstraintContext::free_ring(ctx->universe())->has_rules());
    CHECK(!ctx->same_as(*ConstraintContext::free_ring(ctx->universe())));
}

TEST_CASE("rules may mention their own variable linearly") {
    // w^2 -> 1 + x w encodes a conic solved for w; reduction must terminate
    // and stay at most linear in w.
    auto u = Universe::make({"w", "x"});
    Poly w = Poly::variable(u, "w"), x = Poly::variable(u, "x");
    auto ctx = ConstraintContext::make(u, {{0, Poly::constant(u, Scalar(1)) + x * w}});

    Poly r = ctx->reduce(w.pow(2));
    CHECK(r == Poly::constant(u, Scalar(1)) + x * w);
    // w^3 = w + x w^2 = w + x(1 + x w) = x + (1 + x^2) w
    CHECK(ctx->reduce(w.pow(3)) == x + w + x * x * w);
    CHECK(ctx->reduce(ctx->reduce(w.pow(5))) == ctx->reduce(w.pow(5)));
}

TEST_CASE("malformed rule lists are rejected") {
    auto u = Universe::make({"w", "v", "x"});
    Poly w = Poly::variable(u, "w"), v = Poly::variable(u, "v"), x = Poly::variable(u, "x");

    // replacement quadratic in its own variable
    CHECK_THROWS_AS(ConstraintContext::make(u, {{0, w * w + x}}), Error);
    // later solved variable appears in an earlier replacement: not triangular
    CHECK_THROWS_AS(ConstraintContext::make(u, {{0, v * v}, {1, x}}), Error);
    // duplicate rule for one variable
    CHECK_THROWS_AS(ConstraintContext::make(u, {{0, x}, {0, x + v}}), Error);
}

TEST_CASE("confluence: every rule order reaches the same normal form") {
    // two triangular rules: w^2 -> x^2 + v, v^2 -> 1 + x v (self-linear)
    auto u = Universe::make({"w", "v", "x"});
    Poly w = Poly::variable(u, "w"), v = Poly::variable(u, "v"), x = Poly::variable(u, "x");
    auto ctx = ConstraintContext::make(
        u, {{1, Poly::constant(u, Scalar(1)) + x * v}, {0, x * x + v}});

    Rng rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        Poly p = rng.poly(u, {0, 1, 2}, 3, 4);
        Poly canonical = ctx->reduce(p);
        CAPTURE(trial);
        CHECK(ctx->reduce_with_order(p, {0, 1}) == canonical);
        CHECK(ctx->reduce_with_order(p, {1, 0}) == canonical);
        CHECK(canonical.degree_in(0) <= 1);
        CHECK(canonical.degree_in(1) <= 1);
    }
}

TEST_CASE("reduction is a ring homomorphism onto normal forms") {
    auto ctx = shell_like();
    auto u = ctx->universe();
    Rng rng(8080);
    for (int trial = 0; trial < 50; ++trial) {
        Poly a = rng.poly(u, {0, 1, 2}, 2, 3);
        Poly b = rng.poly(u, {0, 1, 2}, 2, 3);
        CAPTURE(trial);
        CHECK(ctx->reduce(a + b) == ctx->reduce(a) + ctx->reduce(b));
        CHECK(ctx->reduce(a * b) == ctx->reduce(ctx->reduce(a) * ctx->reduce(b)));
    }
}
