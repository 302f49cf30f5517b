#include "doctest.h"

#include "test_support.hpp"

#include "reeb/chart.hpp"
#include "reeb/constraint.hpp"
#include "reeb/contact.hpp"
#include "reeb/errors.hpp"

using namespace reeb;
using reeb::testing::Rng;

namespace {

// The 3-dimensional model structure: theta = dz - y dx on (x, y, z).
ChartPtr chart_xyz() {
    auto ctx = ConstraintContext::free_ring(Universe::make({"x", "y", "z"}));
    return Chart::make("darboux", ctx, {"x", "y", "z"});
}

DifferentialForm model_theta(const ChartPtr& chart) {
    auto dz = DifferentialForm::coordinate_differential(chart, "z");
    auto dx = DifferentialForm::coordinate_differential(chart, "x");
    return dz - dx * chart->scalar("y");
}

ContactStructure model_structure() { return {chart_xyz(), model_theta(chart_xyz())}; }

} // namespace

TEST_CASE("construction guards") {
    // even dimension
    auto flat2 = Chart::make(
        "plane", ConstraintContext::free_ring(Universe::make({"x", "y"})), {"x", "y"});
    CHECK_THROWS_AS(ContactStructure(flat2, DifferentialForm::coordinate_differential(flat2, "x")),
                    EvenDimension);
    // dimension 1 has no volume bracket
    auto line = Chart::make(
        "line", ConstraintContext::free_ring(Universe::make({"x"})), {"x"});
    CHECK_THROWS_AS(ContactStructure(line, DifferentialForm::coordinate_differential(line, "x")),
                    NotContact);
    // theta /\ dtheta = 0: a degenerate form is rejected
    auto chart = chart_xyz();
    CHECK_THROWS_AS(ContactStructure(chart, DifferentialForm::coordinate_differential(chart, "z")),
                    NotContact);
}

TEST_CASE("volume, Reeb field, and contractions on the model structure") {
    auto c = model_structure();
    CHECK(c.n() == 1);

    // theta /\ dtheta = dx /\ dy /\ dz up to the orientation constant
    CHECK(c.dtheta().component({0, 1}).equal_mod(c.chart()->scalar("1")));
    CHECK(c.volume().component({0, 1, 2}).equal_mod(c.chart()->scalar("1")));

    // the Reeb field is d/dz: transverse to the kernel of dtheta
    auto reeb = c.reeb();
    CHECK(reeb.component({2}).equal_mod(c.chart()->scalar("1")));
    CHECK(reeb.component({0}).is_zero());
    CHECK(reeb.component({1}).is_zero());
    CHECK(c.reeb_contraction_check().status != CheckStatus::fail);

    auto pair = c.extract_pair();
    CHECK(c.lambda_normalization_check(pair.lambda).status != CheckStatus::fail);
    // gamma from the pair is the Reeb field itself
    CHECK(pair.gamma.equal_mod(reeb));
}

TEST_CASE("bracket table of the model structure") {
    auto c = model_structure();
    auto pair = c.extract_pair();
    RatExpr x = c.chart()->scalar("x"), y = c.chart()->scalar("y"), z = c.chart()->scalar("z");

    // hand values: [x,y] = 1, [x,z] = x, [y,z] = 0
    CHECK(jacobi_bracket(pair, x, y).equal_mod(c.chart()->scalar("1")));
    CHECK(jacobi_bracket(pair, x, z).equal_mod(x));
    CHECK(jacobi_bracket(pair, y, z).is_zero());
    // the volume definition reads off the same table
    CHECK(c.volume_bracket(x, y).equal_mod(c.chart()->scalar("1")));
    CHECK(c.volume_bracket(x, z).equal_mod(x));
    CHECK(c.volume_bracket(y, z).is_zero());

    // lambda itself: the pairing repeats the coordinate table
    CHECK(lambda_pairing(pair.lambda, x, y).equal_mod(c.chart()->scalar("1")));
    CHECK(lambda_pairing(pair.lambda, y, z).equal_mod(-y));

    // brackets with 1 see the Reeb field: [1, f] = Γ(f) · (sign of slot)
    RatExpr one = RatExpr::constant(c.chart()->context(), Scalar(1));
    CHECK(jacobi_bracket(pair, one, z).equal_mod(one));
    CHECK(jacobi_bracket(pair, z, one).equal_mod(-one));
}

TEST_CASE("structure equations and derived identities hold") {
    auto c = model_structure();
    auto pair = c.extract_pair();
    CHECK(lambda_lambda_defect(pair).is_zero());
    CHECK(gamma_invariance_defect(pair).is_zero());

    Rng rng(5551212);
    const std::vector<std::size_t> vars{0, 1, 2};
    auto ctx = c.chart()->context();
    for (int trial = 0; trial < 50; ++trial) {
        RatExpr f = rng.scalar_expr(ctx, vars, 2, 2);
        RatExpr g = rng.scalar_expr(ctx, vars, 2, 2);
        RatExpr h = rng.scalar_expr(ctx, vars, 2, 2);
        CAPTURE(trial);
        // antisymmetry, Jacobi, and the unit-corrected Leibniz rule
        CHECK((jacobi_bracket(pair, f, g) + jacobi_bracket(pair, g, f)).is_zero());
        CHECK(jacobi_identity_defect(pair, f, g, h).is_zero());
        CHECK(leibniz_defect(pair, f, g, h).is_zero());
    }
}

TEST_CASE("hamiltonian fields close under the bracket") {
    auto c = model_structure();
    auto pair = c.extract_pair();
    Rng rng(8671);
    auto ctx = c.chart()->context();
    for (int trial = 0; trial < 50; ++trial) {
        RatExpr f = rng.scalar_expr(ctx, {0, 1, 2}, 1, 2);
        RatExpr g = rng.scalar_expr(ctx, {0, 1, 2}, 1, 2);
        CAPTURE(trial);
        // X_f(g) recovers [f,g] up to the conformal term: X_f(g) = [f,g] + g Γ(f)
        auto xf = hamiltonian_field(pair, f);
        CHECK(xf.apply(g).equal_mod(jacobi_bracket(pair, f, g) + g * pair.gamma.apply(f)));
        // [X_f, X_g] = X_[f,g]
        auto lhs = schouten_bracket(xf, hamiltonian_field(pair, g));
        CHECK(lhs.equal_mod(hamiltonian_field(pair, jacobi_bracket(pair, f, g))));
    }
}

TEST_CASE("poisson elements are the Reeb-invariant scalars") {
    auto c = model_structure();
    auto pair = c.extract_pair();
    CHECK(is_poisson_element(pair, c.chart()->scalar("x")));   // Γ = d/dz kills x
    CHECK(is_poisson_element(pair, c.chart()->scalar("y^2")));
    CHECK(!is_poisson_element(pair, c.chart()->scalar("z")));
}

TEST_CASE("exact nonvanishing at rational points") {
    // on w^2 = 1 - x^2 - y^2 the scalar w - x vanishes only where the norm
    // of (w - x) does; at x = 3/5, y = 0 it does not (w = ±4/5)
    auto u = Universe::make({"w", "x", "y"});
    Poly one = Poly::constant(u, Scalar(1));
    auto ctx = ConstraintContext::make(
        u, {{0, one - Poly::variable(u, "x").pow(2) - Poly::variable(u, "y").pow(2)}});
    RatExpr w = RatExpr::variable(ctx, "w"), x = RatExpr::variable(ctx, "x");
    CHECK(nonzero_at(w - x, {{"x", Scalar(3, 5)}, {"y", Scalar(0)}}));
    // at x = 2/3, y = 1/3 the branch w = +2/3 makes w - x vanish
    CHECK(!nonzero_at(w - x, {{"x", Scalar(2, 3)}, {"y", Scalar(1, 3)}}));
    CHECK(!nonzero_at(w - w, {{"x", Scalar(1, 2)}, {"y", Scalar(0)}}));
}

TEST_CASE("five-dimensional structure: theta = dz - y1 dx1 - y2 dx2") {
    auto ctx = ConstraintContext::free_ring(Universe::make({"x1", "y1", "x2", "y2", "z"}));
    auto chart = Chart::make("darboux5", ctx, {"x1", "y1", "x2", "y2", "z"});
    auto form = DifferentialForm::coordinate_differential(chart, "z") -
                DifferentialForm::coordinate_differential(chart, "x1") * chart->scalar("y1") -
                DifferentialForm::coordinate_differential(chart, "x2") * chart->scalar("y2");
    ContactStructure c(chart, form);
    CHECK(c.n() == 2);
    CHECK(c.reeb_contraction_check().status != CheckStatus::fail);

    auto pair = c.extract_pair();
    CHECK(c.lambda_normalization_check(pair.lambda).status != CheckStatus::fail);
    CHECK(lambda_lambda_defect(pair).is_zero());
    CHECK(gamma_invariance_defect(pair).is_zero());

    // canonical pairs bracket to 1, separate sectors commute
    CHECK(jacobi_bracket(pair, chart->scalar("x1"), chart->scalar("y1"))
              .equal_mod(chart->scalar("1")));
    CHECK(jacobi_bracket(pair, chart->scalar("x1"), chart->scalar("y2")).is_zero());
    CHECK(jacobi_bracket(pair, chart->scalar("x1"), chart->scalar("x2")).is_zero());
}

TEST_CASE("the volume-bracket coefficient experiment picks one mode") {
    auto chart = chart_xyz();
    auto theta = model_theta(chart);
    ContactStructure c(chart, theta);
    auto experiment = run_mode_experiment(chart, theta, c.extract_pair());
    CHECK(experiment.exactly_one());
    CHECK(experiment.standard_agrees);
    CHECK(!experiment.paper_agrees);
    CHECK(experiment.selected() == "standard");

    // and indeed the paper-mode structure disagrees with the pair bracket
    ContactStructure alt(chart, theta, VolumeMode::paper);
    RatExpr x = chart->scalar("x"), y = chart->scalar("y");
    auto pair = c.extract_pair();
    CHECK(!alt.volume_bracket(x, y).equal_mod(jacobi_bracket(pair, x, y)));
}
