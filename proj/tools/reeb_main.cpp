#include "reeb/geodesic.hpp"
#include "reeb/models.hpp"
#include "reeb/operators.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

reeb::ModelOptions build_options(const std::vector<std::string>& specialize,
                                 const std::string& corrupt, const std::string& mode) {
    reeb::ModelOptions opts;
    for (const auto& entry : specialize) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            throw reeb::Error("--specialize expects name=value, got: " + entry);
        }
        opts.specialize.emplace(entry.substr(0, eq),
                                reeb::Scalar::from_decimal_string(entry.substr(eq + 1)));
    }
    opts.corruption = reeb::corruption_from_string(corrupt);
    if (mode == "standard") {
        opts.mode = reeb::VolumeMode::standard;
    } else if (mode == "paper") {
        opts.mode = reeb::VolumeMode::paper;
    } else {
        throw reeb::Error("--mode expects standard or paper, got: " + mode);
    }
    return opts;
}

int emit_report(const reeb::VerificationReport& report, const std::string& json_path) {
    std::cout << report.to_text();
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
            throw reeb::Error("cannot write JSON report to " + json_path);
        }
        out << report.to_json();
    }
    return report.exit_code();
}

reeb::Geodesic parse_geodesic_option(const reeb::GeodesicSpace& space,
                                     const std::string& text) {
    if (text.empty() || text == "symbolic") {
        return reeb::symbolic_geodesic(space);
    }
    std::array<reeb::Scalar, 4> base = {reeb::Scalar(0), reeb::Scalar(0), reeb::Scalar(0),
                                        reeb::Scalar(0)};
    std::array<reeb::Scalar, 4> velocity = {reeb::Scalar(1), reeb::Scalar(0),
                                            reeb::Scalar(0), reeb::Scalar(0)};
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string entry = text.substr(start, end - start);
        start = end + 1;
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            throw reeb::Error("--geodesic expects name=value entries, got: " + entry);
        }
        const std::string name = entry.substr(0, eq);
        const reeb::Scalar value = reeb::Scalar::from_decimal_string(entry.substr(eq + 1));
        if (name.size() == 2 && (name[0] == 'q' || name[0] == 'k') && name[1] >= '0' &&
            name[1] <= '3') {
            const std::size_t mu = static_cast<std::size_t>(name[1] - '0');
            (name[0] == 'q' ? base : velocity)[mu] = value;
        } else {
            throw reeb::Error("--geodesic entries must name q0..q3 or k0..k3, got: " + name);
        }
    }
    return reeb::rational_geodesic(space, base, velocity);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of the contact and Jacobi structures of "
                 "relativistic phase space"};
    app.require_subcommand(1);

    std::string suite;
    std::string json_path;
    std::vector<std::string> specialize;
    std::string corrupt;
    std::string mode = "standard";

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "mass-shell | two-point | lagrangian | operator | "
                                       "peierls | all")
        ->required();
    verify->add_option("--json", json_path, "write the report as JSON to this path");
    verify->add_option("--specialize", specialize, "fix a parameter, e.g. m=1");
    verify->add_option("--corrupt", corrupt,
                       "sabotage one tensor (lambda | gamma | theta | generator)");
    verify->add_option("--mode", mode,
                       "volume-bracket coefficient: standard (n) or paper (n-1)");

    std::string table_model;
    std::vector<std::string> table_specialize;
    CLI::App* table = app.add_subcommand("table", "print the full coordinate bracket table");
    table->add_option("model", table_model, "mass-shell | two-point | lagrangian")
        ->required();
    table->add_option("--specialize", table_specialize, "fix a parameter, e.g. m=1");

    std::string bracket_model, bracket_f, bracket_g;
    std::vector<std::string> bracket_specialize;
    CLI::App* bracket = app.add_subcommand("bracket", "evaluate one Jacobi bracket");
    bracket->add_option("model", bracket_model, "mass-shell | two-point | lagrangian")
        ->required();
    bracket->add_option("f", bracket_f, "first scalar")->required();
    bracket->add_option("g", bracket_g, "second scalar")->required();
    bracket->add_option("--specialize", bracket_specialize, "fix a parameter, e.g. m=1");

    std::string operator_text;
    std::string phase = "k0*x0 + k1*x1 + k2*x2 + k3*x3";
    unsigned symbol_order = 0;
    bool plane_wave = false;
    bool on_shell = false;
    CLI::App* symbol = app.add_subcommand(
        "symbol", "iterated-commutator symbol or plane-wave limit of an operator");
    symbol->add_option("operator", operator_text,
                       "e.g. \"1*d2(x0) - 1*d2(x1) - 1*d2(x2) - 1*d2(x3) + m^2\"")
        ->required();
    symbol->add_option("--phase", phase, "phase function (default k·x)");
    symbol->add_option("--order", symbol_order,
                       "number of commutators (default: operator order)");
    symbol->add_flag("--plane-wave", plane_wave,
                     "replace each d(x^mu) by k_mu instead of iterating commutators");
    symbol->add_flag("--on-shell", on_shell, "impose k·k = m^2");

    std::string functional_a, functional_b, geodesic_text = "symbolic";
    CLI::App* peierls = app.add_subcommand("peierls",
                                           "Peierls bracket of two delta functionals");
    peierls->add_option("a", functional_a, "e.g. \"x2 @ s=3/2\" (';'-separated atoms)")
        ->required();
    peierls->add_option("b", functional_b, "second functional")->required();
    peierls->add_option("--geodesic", geodesic_text,
                        "symbolic (default) or q0=..,..,k0=..,.. with rational values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            const reeb::ModelOptions opts = build_options(specialize, corrupt, mode);
            const bool plain_suite = suite == "operator" || suite == "peierls";
            if (plain_suite && (!specialize.empty() || !corrupt.empty())) {
                throw reeb::Error("--specialize/--corrupt only apply to model suites");
            }
            if (suite == "all" && opts.corruption != reeb::Corruption::none) {
                throw reeb::Error("--corrupt needs a single model suite");
            }
            if (suite == "mass-shell") {
                return emit_report(reeb::verify_mass_shell(opts), json_path);
            }
            if (suite == "two-point") {
                return emit_report(reeb::verify_two_point(opts), json_path);
            }
            if (suite == "lagrangian") {
                return emit_report(reeb::verify_lagrangian(opts), json_path);
            }
            if (suite == "operator") {
                return emit_report(reeb::verify_operator_suite(), json_path);
            }
            if (suite == "peierls") {
                return emit_report(reeb::verify_peierls_suite(), json_path);
            }
            if (suite == "all") {
                reeb::VerificationReport report("all");
                report.merge(reeb::verify_mass_shell(opts));
                report.merge(reeb::verify_two_point(opts));
                report.merge(reeb::verify_lagrangian(opts));
                report.merge(reeb::verify_operator_suite());
                report.merge(reeb::verify_peierls_suite());
                return emit_report(report, json_path);
            }
            throw reeb::Error("unknown suite: " + suite);
        }

        if (table->parsed()) {
            const reeb::ModelOptions opts = build_options(table_specialize, "", "standard");
            if (table_model == "mass-shell") {
                std::cout << reeb::MassShellModel(opts).table_text();
            } else if (table_model == "two-point") {
                std::cout << reeb::TwoPointModel(opts).table_text();
            } else if (table_model == "lagrangian") {
                std::cout << reeb::LagrangianModel(opts).table_text();
            } else {
                throw reeb::Error("unknown model: " + table_model);
            }
            return 0;
        }

        if (bracket->parsed()) {
            const reeb::ModelOptions opts = build_options(bracket_specialize, "", "standard");
            reeb::RatExpr value = [&] {
                if (bracket_model == "mass-shell") {
                    reeb::MassShellModel model(opts);
                    return model.bracket(model.scalar(bracket_f), model.scalar(bracket_g));
                }
                if (bracket_model == "two-point") {
                    reeb::TwoPointModel model(opts);
                    return model.bracket(model.scalar(bracket_f), model.scalar(bracket_g));
                }
                if (bracket_model == "lagrangian") {
                    reeb::LagrangianModel model(opts);
                    return model.bracket(model.scalar(bracket_f), model.scalar(bracket_g));
                }
                throw reeb::Error("unknown model: " + bracket_model);
            }();
            std::cout << value.to_string() << "\n";
            return 0;
        }

        if (symbol->parsed()) {
            auto universe = reeb::Universe::make({"x0", "x1", "x2", "x3", "y0", "y1", "y2",
                                                  "y3", "k0", "k1", "k2", "k3", "m"});
            reeb::ContextPtr ctx;
            if (on_shell) {
                reeb::Poly rule = reeb::Poly::variable(universe, "m") *
                                  reeb::Poly::variable(universe, "m");
                for (std::size_t i = 1; i < 4; ++i) {
                    reeb::Poly ki = reeb::Poly::variable(universe, "k" + std::to_string(i));
                    rule += ki * ki;
                }
                ctx = reeb::ConstraintContext::make(universe,
                                                    {{universe->index("k0"), rule}});
            } else {
                ctx = reeb::ConstraintContext::free_ring(universe);
            }
            reeb::ChartPtr chart =
                reeb::Chart::make("spacetime", ctx, {"x0", "x1", "x2", "x3"});
            const reeb::DifferentialOperator op = reeb::parse_operator(operator_text, chart);
            if (plane_wave) {
                std::vector<reeb::RatExpr> momentum;
                for (std::size_t mu = 0; mu < 4; ++mu) {
                    momentum.push_back(
                        reeb::RatExpr::variable(ctx, "k" + std::to_string(mu)));
                }
                std::cout << reeb::plane_wave_conjugation(op, momentum).to_string() << "\n";
                return 0;
            }
            const unsigned order = symbol_order == 0 ? op.order() : symbol_order;
            const reeb::RatExpr s = chart->scalar(phase);
            std::cout << reeb::iterated_symbol(op, s, order).to_string() << "\n";
            return 0;
        }

        if (peierls->parsed()) {
            reeb::GeodesicSpace space;
            const reeb::Geodesic g = parse_geodesic_option(space, geodesic_text);
            const reeb::DeltaFunctional a = reeb::parse_functional(functional_a, space.ctx);
            const reeb::DeltaFunctional b = reeb::parse_functional(functional_b, space.ctx);
            std::cout << reeb::peierls_bracket(a, b, g).to_string() << "\n";
            return 0;
        }
    } catch (const reeb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
