#include "doctest.h"

#include "test_support.hpp"

#include "reeb/chart.hpp"
#include "reeb/constraint.hpp"
#include "reeb/errors.hpp"
#include "reeb/forms.hpp"

using namespace reeb;
using reeb::testing::Rng;
using reeb::testing::random_tuple;

namespace {

ChartPtr free_chart() {
    auto ctx = ConstraintContext::free_ring(Universe::make({"x", "y", "z", "t"}));
    return Chart::make("flat", ctx, {"x", "y", "z", "t"});
}

// 3-sphere-like quadric: w^2 = 1 - x^2 - y^2, chart on (x, y) with w solved.
ChartPtr quadric_chart() {
    auto u = Universe::make({"w", "x", "y"});
    Poly one = Poly::constant(u, Scalar(1));
    Poly rhs = one - Poly::variable(u, "x").pow(2) - Poly::variable(u, "y").pow(2);
    auto ctx = ConstraintContext::make(u, {{0, rhs}});
    return Chart::make("quadric", ctx, {"w", "x", "y"}, {"w"});
}

DifferentialForm random_form(Rng& rng, const ChartPtr& chart, unsigned degree, int comps) {
    DifferentialForm out(chart, degree);
    const std::vector<std::size_t> vars(chart->basis().begin(), chart->basis().end());
    for (int c = 0; c < comps; ++c) {
        out.add_component(random_tuple(rng, chart->dim(), degree),
                          rng.scalar_expr(chart->context(), vars, 2, 2));
    }
    return out;
}

MultivectorField random_field(Rng& rng, const ChartPtr& chart, unsigned degree, int comps) {
    MultivectorField out(chart, degree);
    const std::vector<std::size_t> vars(chart->basis().begin(), chart->basis().end());
    for (int c = 0; c < comps; ++c) {
        out.add_component(random_tuple(rng, chart->dim(), degree),
                          rng.scalar_expr(chart->context(), vars, 2, 2));
    }
    return out;
}

} // namespace

TEST_CASE("tuple sorting tracks permutation signs") {
    IdxTuple t{2, 0, 1};
    CHECK(sort_tuple(t) == 1);
    CHECK(t == IdxTuple{0, 1, 2});
    IdxTuple s{1, 0};
    CHECK(sort_tuple(s) == -1);
    IdxTuple r{1, 1};
    CHECK(sort_tuple(r) == 0);
}

TEST_CASE("components are antisymmetric in their indices") {
    auto chart = free_chart();
    DifferentialForm w(chart, 2);
    w.add_component({0, 1}, chart->scalar("x"));
    CHECK(w.component({1, 0}).equal_mod(chart->scalar("-x")));
    CHECK(w.component({0, 2}).is_zero());
    CHECK(w.component({2, 2}).is_zero());
}

TEST_CASE("wedge: antisymmetry on 1-forms, known products") {
    auto chart = free_chart();
    auto dx = DifferentialForm::coordinate_differential(chart, "x");
    auto dy = DifferentialForm::coordinate_differential(chart, "y");
    auto dz = DifferentialForm::coordinate_differential(chart, "z");

    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(dx, dy).equal_mod(-wedge(dy, dx)));
    CHECK(wedge(wedge(dx, dy), dz).component({0, 1, 2}).equal_mod(chart->scalar("1")));

    // (dx + dy) /\ (dx - dy) = -2 dx/\dy
    auto p = wedge(dx + dy, dx - dy);
    CHECK(p.component({0, 1}).equal_mod(chart->scalar("-2")));

    // wedge_power counts the multinomial: (dx/\dy + dz/\dt)^2 = 2 dx/\dy/\dz/\dt
    auto s = wedge(dx, dy) + wedge(dz, DifferentialForm::coordinate_differential(chart, "t"));
    CHECK(wedge_power(s, 2).component({0, 1, 2, 3}).equal_mod(chart->scalar("2")));
}

TEST_CASE("graded commutativity of wedge on random forms") {
    auto chart = free_chart();
    Rng rng(60601);
    for (int trial = 0; trial < 50; ++trial) {
        unsigned p = 1 + rng.index(2);
        unsigned q = 1 + rng.index(2);
        auto a = random_form(rng, chart, p, 2);
        auto b = random_form(rng, chart, q, 2);
        auto ab = wedge(a, b);
        auto ba = wedge(b, a);
        CAPTURE(trial);
        if ((p * q) % 2 == 1) {
            CHECK(ab.equal_mod(-ba));
        } else {
            CHECK(ab.equal_mod(ba));
        }
    }
}

TEST_CASE("d is nilpotent on a free chart") {
    auto chart = free_chart();
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_form(rng, chart, rng.index(3), 2);
        CAPTURE(trial);
        CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
    }
}

TEST_CASE("d is nilpotent on a quadric chart with a solved coordinate") {
    // Derivatives along the basis are implicit derivatives, so d d = 0 is a
    // real statement about the chain-rule bookkeeping, not just symbol
    // shuffling.
    auto chart = quadric_chart();
    Rng rng(117);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_form(rng, chart, rng.index(2), 2);
        CAPTURE(trial);
        CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
    }
    // and the solved differential obeys the chain rule: dw = -(x dx + y dy)/w
    auto dw = DifferentialForm::coordinate_differential(chart, "w");
    auto w = chart->scalar("w");
    CHECK(dw.component({chart->basis_position(1)}).equal_mod(chart->scalar("-x") / w));
    CHECK(dw.component({chart->basis_position(2)}).equal_mod(chart->scalar("-y") / w));
}

TEST_CASE("d is an antiderivation") {
    auto chart = free_chart();
    Rng rng(40302);
    for (int trial = 0; trial < 50; ++trial) {
        unsigned p = rng.index(2) + 1;
        auto a = random_form(rng, chart, p, 2);
        auto b = random_form(rng, chart, rng.index(2) + 1, 2);
        auto lhs = exterior_derivative(wedge(a, b));
        auto rhs = wedge(exterior_derivative(a), b) +
                   (p % 2 == 0 ? wedge(a, exterior_derivative(b))
                               : -wedge(a, exterior_derivative(b)));
        CAPTURE(trial);
        CHECK(lhs.equal_mod(rhs));
    }
}

TEST_CASE("interior product: slots fill left to right, antiderivation in degree") {
    auto chart = free_chart();
    auto dx = DifferentialForm::coordinate_differential(chart, "x");
    auto dy = DifferentialForm::coordinate_differential(chart, "y");
    auto ex = MultivectorField::coordinate_vector(chart, "x");
    auto ey = MultivectorField::coordinate_vector(chart, "y");

    CHECK(interior_product(ex, dx).component({}).equal_mod(chart->scalar("1")));
    CHECK(interior_product(ex, dy).is_zero());
    // i_{ex /\ ey} (dx /\ dy) = (dx /\ dy)(ex, ey) = 1
    CHECK(interior_product(wedge(ex, ey), wedge(dx, dy)).component({}).equal_mod(
        chart->scalar("1")));

    // for a vector field: i_X (a /\ b) = (i_X a) /\ b + (-1)^p a /\ (i_X b)
    Rng rng(33550336);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_field(rng, chart, 1, 2);
        unsigned p = rng.index(2) + 1;
        auto a = random_form(rng, chart, p, 2);
        auto b = random_form(rng, chart, rng.index(2) + 1, 2);
        auto lhs = interior_product(x, wedge(a, b));
        auto rhs = wedge(interior_product(x, a), b) +
                   (p % 2 == 0 ? wedge(a, interior_product(x, b))
                               : -wedge(a, interior_product(x, b)));
        CAPTURE(trial);
        CHECK(lhs.equal_mod(rhs));
    }
}

TEST_CASE("vector fields act as derivations") {
    auto chart = quadric_chart();
    auto ex = MultivectorField::coordinate_vector(chart, "x");
    // on the quadric, e_x(w) = dw/dx = -x/w
    CHECK(ex.apply(chart->scalar("w")).equal_mod(chart->scalar("-x") / chart->scalar("w")));

    Rng rng(271828);
    const std::vector<std::size_t> vars{0, 1, 2};
    for (int trial = 0; trial < 50; ++trial) {
        RatExpr f = rng.scalar_expr(chart->context(), vars, 2, 2);
        RatExpr g = rng.scalar_expr(chart->context(), vars, 2, 2);
        auto x = random_field(rng, chart, 1, 2);
        CAPTURE(trial);
        CHECK(x.apply(f * g).equal_mod(x.apply(f) * g + f * x.apply(g)));
    }
}

TEST_CASE("lie derivative: Cartan formula consequences") {
    auto chart = free_chart();
    Rng rng(1618);
    for (int trial = 0; trial < 25; ++trial) {
        auto x = random_field(rng, chart, 1, 2);
        auto a = random_form(rng, chart, rng.index(2) + 1, 2);
        CAPTURE(trial);
        // L_X d a = d L_X a
        CHECK(lie_derivative(x, exterior_derivative(a))
                  .equal_mod(exterior_derivative(lie_derivative(x, a))));
        // L_X on scalars is plain application
        RatExpr f = rng.scalar_expr(chart->context(), {0, 1, 2, 3}, 2, 2);
        CHECK(lie_derivative(x, DifferentialForm::from_scalar(chart, f))
                  .component({})
                  .equal_mod(x.apply(f)));
    }
}

TEST_CASE("pullback commutes with d") {
    // map: (u, v) -> (x, y, z, t) = (u^2, v, u v, 3)
    auto source = Chart::make(
        "plane", ConstraintContext::free_ring(Universe::make({"u", "v"})), {"u", "v"});
    auto target = free_chart();
    SmoothMap phi(source, target,
                  {{"x", source->scalar("u^2")},
                   {"y", source->scalar("v")},
                   {"z", source->scalar("u*v")},
                   {"t", source->scalar("3")}});

    // sanity: pull back coordinates themselves
    CHECK(phi.pull_scalar(target->scalar("x + z")).equal_mod(source->scalar("u^2 + u*v")));

    Rng rng(90210);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_form(rng, target, rng.index(2) + 1, 2);
        CAPTURE(trial);
        CHECK(pullback(phi, exterior_derivative(a))
                  .equal_mod(exterior_derivative(pullback(phi, a))));
    }

    // degenerate directions vanish: dt pulls back to zero
    auto dt = DifferentialForm::coordinate_differential(target, "t");
    CHECK(pullback(phi, dt).is_zero());
}

TEST_CASE("pullback respects wedge") {
    auto source = Chart::make(
        "plane", ConstraintContext::free_ring(Universe::make({"u", "v"})), {"u", "v"});
    auto target = free_chart();
    SmoothMap phi(source, target,
                  {{"x", source->scalar("u + v")},
                   {"y", source->scalar("u*v")},
                   {"z", source->scalar("u - v")},
                   {"t", source->scalar("0")}});
    Rng rng(14142);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_form(rng, target, 1, 2);
        auto b = random_form(rng, target, 1, 2);
        CAPTURE(trial);
        CHECK(pullback(phi, wedge(a, b)).equal_mod(wedge(pullback(phi, a), pullback(phi, b))));
    }
}

TEST_CASE("restriction to a cut-out chart demands tangency") {
    auto chart = quadric_chart();
    auto ambient = Chart::make("ambient",
                               ConstraintContext::free_ring(chart->universe()),
                               {"w", "x", "y"});

    // X = x e_w ... is not tangent to w^2 + x^2 + y^2 = 1 (tangency needs
    // w X^w + x X^x + y X^y = 0)
    MultivectorField bad(ambient, 1);
    bad.add_component({0}, ambient->scalar("x"));
    CHECK_THROWS_AS(restrict_to_chart(bad, chart), NotTangent);

    // the rotation field y e_x - x e_y is tangent and restricts intact
    MultivectorField rot(ambient, 1);
    rot.add_component({1}, ambient->scalar("y"));
    rot.add_component({2}, ambient->scalar("-x"));
    auto intrinsic = restrict_to_chart(rot, chart);
    CHECK(intrinsic.component({0}).equal_mod(chart->scalar("y")));
    CHECK(intrinsic.component({1}).equal_mod(chart->scalar("-x")));

    // so does the field that rotates into the solved direction
    MultivectorField mixed(ambient, 1);
    mixed.add_component({0}, ambient->scalar("x"));
    mixed.add_component({1}, ambient->scalar("-w"));
    auto back = restrict_to_chart(mixed, chart);
    // intrinsic component along x is -w; the w-motion is implied
    CHECK(back.component({0}).equal_mod(-chart->scalar("w")));
}
