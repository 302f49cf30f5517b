#include "doctest.h"

#include "test_support.hpp"

#include "reeb/constraint.hpp"
#include "reeb/errors.hpp"
#include "reeb/parse.hpp"

using namespace reeb;
using reeb::testing::Rng;

namespace {

ContextPtr ctx3() { return ConstraintContext::free_ring(Universe::make({"x", "y", "z"})); }

} // namespace

TEST_CASE("grammar: precedence, parens, exponents, rationals") {
    auto ctx = ctx3();
    RatExpr x = RatExpr::variable(ctx, "x"), y = RatExpr::variable(ctx, "y");

    CHECK(parse_scalar("x + 2*y^2", ctx).equal_mod(x + y * y * Scalar(2)));
    CHECK(parse_scalar("(x + y)^2", ctx).equal_mod((x + y).pow(2)));
    CHECK(parse_scalar("-x^2", ctx).equal_mod(-(x * x)));       // unary minus binds loosely
    CHECK(parse_scalar("3/2", ctx).equal_mod(RatExpr::constant(ctx, Scalar(3, 2))));
    CHECK(parse_scalar("x/y/2", ctx).equal_mod(x / (y * Scalar(2)))); // left associative
    CHECK(parse_scalar("x - - y", ctx).equal_mod(x + y));
    CHECK_THROWS_AS(parse_scalar("2x", ctx), ParseError);       // no juxtaposition product
}

TEST_CASE("imaginary unit only when the universe does not claim i") {
    auto plain = ctx3();
    CHECK(parse_scalar("i^2", plain).equal_mod(RatExpr::constant(plain, Scalar(-1))));

    auto claimed = ConstraintContext::free_ring(Universe::make({"i", "x"}));
    RatExpr i_var = RatExpr::variable(claimed, "i");
    CHECK(parse_scalar("i^2", claimed).equal_mod(i_var * i_var));
}

TEST_CASE("parse errors carry positions") {
    auto ctx = ctx3();
    CHECK_THROWS_AS(parse_scalar("x + w", ctx), ParseError); // unknown name, with offset
    CHECK_THROWS_AS(parse_scalar("(x + y", ctx), ParseError);
    CHECK_THROWS_AS(parse_scalar("x +", ctx), ParseError);
    CHECK_THROWS_AS(parse_scalar("", ctx), ParseError);
    CHECK_THROWS_AS(parse_scalar("x ^ y", ctx), ParseError);  // exponents are integers
    CHECK_THROWS_AS(parse_scalar("x $ y", ctx), ParseError);
    CHECK_THROWS_AS(parse_scalar("x /\\ y", ctx), ParseError); // wedge is not scalar division
}

TEST_CASE("lexer token stream") {
    Lexer lex("a /\\ b @ 3");
    CHECK(lex.peek().kind == Tok::ident);
    CHECK(lex.next().text == "a");
    CHECK(lex.accept(Tok::wedge));
    CHECK(lex.expect(Tok::ident, "name").text == "b");
    CHECK(lex.accept(Tok::at));
    CHECK(lex.peek().kind == Tok::number);
    CHECK(!lex.accept(Tok::comma));
    CHECK_THROWS_AS(lex.expect(Tok::ident, "name"), ParseError);
}

TEST_CASE("round trip: print then reparse") {
    auto ctx = ctx3();
    Rng rng(1123);
    for (int trial = 0; trial < 50; ++trial) {
        RatExpr num = rng.scalar_expr(ctx, {0, 1, 2}, 2, 2);
        RatExpr den = rng.scalar_expr(ctx, {0, 1, 2}, 1, 1);
        if (den.is_zero()) continue;
        RatExpr f = num / den;
        CAPTURE(trial);
        CAPTURE(f.to_string());
        CHECK(parse_scalar(f.to_string(), ctx).equal_mod(f));
    }
}
