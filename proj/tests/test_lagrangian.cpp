#include "doctest.h"

#include "test_support.hpp"

#include "reeb/errors.hpp"
#include "reeb/models.hpp"

using namespace reeb;
using reeb::testing::find_check;

namespace {

const LagrangianModel& model() {
    static LagrangianModel instance{ModelOptions{}};
    return instance;
}

} // namespace

TEST_CASE("unit-velocity surface inside the tangent chart") {
    const auto& m = model();
    CHECK(m.ambient()->dim() == 8);
    CHECK(m.surface()->dim() == 7);
    CHECK(m.surface()->universe()->name(m.surface()->solved().front()) == "v0");

    // v on v = 1 with signature (+,-,-,-)
    RatExpr norm(m.surface()->context());
    for (std::size_t mu = 0; mu < 4; ++mu) {
        RatExpr vmu = m.scalar(std::string("v") + char('0' + mu));
        norm += vmu * vmu * minkowski(mu, mu);
    }
    CHECK(norm.equal_mod(m.scalar("1")));
}

TEST_CASE("contact form pairs velocities with positions") {
    const auto& m = model();
    const auto& theta = m.contact().theta();
    // Theta = v_mu dx^mu: lowered components pick up the metric signs
    CHECK(theta.component({0}).equal_mod(m.scalar("v0")));
    CHECK(theta.component({1}).equal_mod(m.scalar("-v1")));
    CHECK(theta.component({3}).equal_mod(m.scalar("-v3")));

    // d Theta equals the stored projector 2-form, computed independently here
    CHECK((exterior_derivative(theta) - m.omega()).is_zero());
}

TEST_CASE("projector kernel on the surface") {
    const auto& m = model();
    auto ctx = m.surface()->context();

    // the velocity generator v^mu @x_mu is tangent and spans part of ker Omega
    MultivectorField velocity(m.surface(), 1);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        velocity.add_component({mu}, RatExpr::variable(ctx, std::string("v") + char('0' + mu)));
    }
    CHECK(interior_product(velocity, m.omega()).is_zero());

    // a transverse direction is not killed
    MultivectorField transverse(m.surface(), 1);
    transverse.add_component({1}, RatExpr::constant(ctx, Scalar(1)));
    CHECK_FALSE(interior_product(transverse, m.omega()).is_zero());
}

TEST_CASE("coordinate bracket table") {
    const auto& m = model();
    auto at = [&](const char* name) { return m.scalar(name); };

    CHECK(m.bracket(at("x0"), at("x1")).to_string() == "x0*v1 - x1*v0");
    CHECK(m.bracket(at("x1"), at("x2")).equal_mod(at("x1") * at("v2") - at("x2") * at("v1")));
    CHECK(m.bracket(at("x0"), at("v0")).equal_mod(m.scalar("-1")));
    CHECK(m.bracket(at("x1"), at("v1")).equal_mod(m.scalar("1")));
    CHECK(m.bracket(at("x0"), at("v1")).is_zero());
    CHECK(m.bracket(at("v1"), at("v2")).is_zero());

    const std::string table = m.table_text();
    CHECK(table.find("[x0, x1] = x0*v1 - x1*v0") != std::string::npos);
    CHECK(table.find("[x0, v0] = -1") != std::string::npos);
}

TEST_CASE("verification suite is clean") {
    auto report = model().verify();
    CHECK(report.fail_count() == 0);
    REQUIRE(report.checks().size() == 11);
    for (const char* id :
         {"constraint.vdv", "theta.differential", "volume.nonzero-witness",
          "kernel.velocity-contraction", "kernel.euler-contraction", "reeb.contraction",
          "lambda.normalization", "table.xx", "substitution.theta", "substitution.pair",
          "substitution.table"}) {
        auto* rec = find_check(report, id);
        CAPTURE(id);
        REQUIRE(rec != nullptr);
        CHECK(rec->status == CheckStatus::pass);
    }
}

TEST_CASE("model has no tunable parameters") {
    ModelOptions opts;
    opts.specialize = {{"m", Scalar(1)}};
    CHECK_THROWS_AS(LagrangianModel{opts}, Error);
}

TEST_CASE("negative controls break the corrupted layer") {
    for (auto corruption : {Corruption::theta, Corruption::lambda, Corruption::gamma}) {
        ModelOptions opts;
        opts.corruption = corruption;
        auto report = LagrangianModel{opts}.verify();
        CAPTURE(static_cast<int>(corruption));
        CHECK(report.fail_count() >= 1);
        CHECK(report.exit_code() == 1);
    }

    // there is no generator family here, so asking for that sabotage is an error
    ModelOptions opts;
    opts.corruption = Corruption::generator;
    CHECK_THROWS_WITH_AS(LagrangianModel{opts},
                         "the tangent-bundle model has no generator family to corrupt", Error);
}
