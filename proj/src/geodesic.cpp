#include "reeb/geodesic.hpp"

#include "reeb/errors.hpp"
#include "reeb/models.hpp"
#include "reeb/parse.hpp"

namespace reeb {

namespace {

std::string index_name(const std::string& stem, std::size_t mu) {
    return stem + std::to_string(mu);
}

// k^mu @F/@x^mu summed over one atom's gradient, evaluated on the geodesic.
std::vector<RatExpr> gradient_on_geodesic(const RatExpr& observable, const Geodesic& g,
                                          const RatExpr& parameter) {
    const ContextPtr& ctx = observable.context();
    const UniversePtr& universe = ctx->universe();
    std::map<std::size_t, RatExpr> onto;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        onto.emplace(universe->index(index_name("x", mu)), g.point(mu, parameter));
    }
    std::vector<RatExpr> out;
    out.reserve(4);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        out.push_back(
            observable.partial_derivative(index_name("x", mu)).substitute(onto, ctx));
    }
    return out;
}

} // namespace

GeodesicSpace::GeodesicSpace() {
    std::vector<std::string> names;
    for (const auto& stem : {"q", "k", "x", "j", "jd", "h", "hd"}) {
        for (std::size_t mu = 0; mu < 4; ++mu) {
            names.push_back(index_name(stem, mu));
        }
    }
    for (const auto& extra : {"s", "s1", "s2", "a", "b"}) {
        names.push_back(extra);
    }
    universe = Universe::make(names);
    Poly rule = Poly::constant(universe, Scalar(1));
    for (std::size_t i = 1; i < 4; ++i) {
        Poly ki = Poly::variable(universe, index_name("k", i));
        rule += ki * ki;
    }
    ctx = ConstraintContext::make(universe, {{universe->index("k0"), rule}});
    free_ctx = ConstraintContext::free_ring(universe);
}

Geodesic symbolic_geodesic(const GeodesicSpace& space) {
    Geodesic g;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        g.base.push_back(space.var(index_name("q", mu)));
        g.velocity.push_back(space.var(index_name("k", mu)));
    }
    return g;
}

Geodesic rational_geodesic(const GeodesicSpace& space, const std::array<Scalar, 4>& base,
                           const std::array<Scalar, 4>& velocity) {
    Scalar norm(0);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        norm += velocity[mu] * velocity[mu] * minkowski(mu, mu);
    }
    if (norm != Scalar(1)) {
        throw Error("geodesic velocity is not unit time-like: g(k, k) = " +
                    norm.to_string());
    }
    Geodesic g;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        g.base.push_back(space.constant(base[mu]));
        g.velocity.push_back(space.constant(velocity[mu]));
    }
    return g;
}

std::vector<RatExpr> JacobiField::at(const RatExpr& s) const {
    std::vector<RatExpr> out;
    out.reserve(value.size());
    for (std::size_t mu = 0; mu < value.size(); ++mu) {
        out.push_back(value[mu] + s * derivative[mu]);
    }
    return out;
}

std::vector<std::vector<RatExpr>> transverse_projector(const Geodesic& g) {
    const ContextPtr& ctx = g.velocity[0].context();
    std::vector<std::vector<RatExpr>> p;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        std::vector<RatExpr> row;
        for (std::size_t nu = 0; nu < 4; ++nu) {
            const RatExpr k_mu = g.velocity[mu] * minkowski(mu, mu);
            const RatExpr k_nu = g.velocity[nu] * minkowski(nu, nu);
            row.push_back(RatExpr::constant(ctx, minkowski(mu, nu)) - k_mu * k_nu);
        }
        p.push_back(std::move(row));
    }
    return p;
}

std::vector<RatExpr> transverse_part(const Geodesic& g, const std::vector<RatExpr>& vec) {
    RatExpr along(g.velocity[0].context());
    for (std::size_t mu = 0; mu < 4; ++mu) {
        along += g.velocity[mu] * vec[mu] * minkowski(mu, mu);
    }
    std::vector<RatExpr> out;
    out.reserve(4);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        out.push_back(vec[mu] - g.velocity[mu] * along);
    }
    return out;
}

JacobiDecomposition decompose_jacobi_field(const Geodesic& g, const JacobiField& j) {
    RatExpr a(g.velocity[0].context());
    RatExpr b(g.velocity[0].context());
    for (std::size_t mu = 0; mu < 4; ++mu) {
        a += g.velocity[mu] * j.derivative[mu] * minkowski(mu, mu);
        b += g.velocity[mu] * j.value[mu] * minkowski(mu, mu);
    }
    JacobiField transverse{transverse_part(g, j.value), transverse_part(g, j.derivative)};
    return {std::move(a), std::move(b), std::move(transverse)};
}

RatExpr theta_eval(const Geodesic& g, const JacobiField& j, const RatExpr& s) {
    const std::vector<RatExpr> at_s = j.at(s);
    RatExpr out(g.velocity[0].context());
    for (std::size_t mu = 0; mu < 4; ++mu) {
        out += g.velocity[mu] * at_s[mu] * minkowski(mu, mu);
    }
    return out;
}

RatExpr omega_eval(const Geodesic& g, const JacobiField& j1, const JacobiField& j2) {
    const auto p = transverse_projector(g);
    RatExpr out(g.velocity[0].context());
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = 0; nu < 4; ++nu) {
            out += j1.value[mu] * p[mu][nu] * j2.derivative[nu];
            out -= j1.derivative[mu] * p[mu][nu] * j2.value[nu];
        }
    }
    return out;
}

RatExpr evaluate(const DeltaFunctional& f, const Geodesic& g) {
    const ContextPtr& ctx = g.velocity[0].context();
    const UniversePtr& universe = ctx->universe();
    RatExpr out(ctx);
    for (const auto& atom : f.atoms) {
        std::map<std::size_t, RatExpr> onto;
        for (std::size_t mu = 0; mu < 4; ++mu) {
            onto.emplace(universe->index(index_name("x", mu)), g.point(mu, atom.parameter));
        }
        out += atom.observable.substitute(onto, ctx);
    }
    return out;
}

RatExpr reparametrization_defect(const DeltaFunctional& f, const Geodesic& g) {
    RatExpr out(g.velocity[0].context());
    for (const auto& atom : f.atoms) {
        const auto grad = gradient_on_geodesic(atom.observable, g, atom.parameter);
        for (std::size_t mu = 0; mu < 4; ++mu) {
            out += g.velocity[mu] * grad[mu];
        }
    }
    return out;
}

bool reparam_invariant(const DeltaFunctional& f, const Geodesic& g) {
    return classify_zero(reparametrization_defect(f, g)).status != CheckStatus::fail;
}

RatExpr peierls_bracket(const DeltaFunctional& a, const DeltaFunctional& b,
                        const Geodesic& g) {
    const ContextPtr& ctx = g.velocity[0].context();
    const auto p = transverse_projector(g);
    RatExpr out(ctx);
    for (const auto& atom_a : a.atoms) {
        const auto grad_a = gradient_on_geodesic(atom_a.observable, g, atom_a.parameter);
        for (const auto& atom_b : b.atoms) {
            const auto grad_b = gradient_on_geodesic(atom_b.observable, g, atom_b.parameter);
            const RatExpr gap = atom_a.parameter - atom_b.parameter;
            for (std::size_t mu = 0; mu < 4; ++mu) {
                for (std::size_t nu = 0; nu < 4; ++nu) {
                    // Raised projector: P^{mu nu} = g^{mu mu} g^{nu nu} P_{mu nu}.
                    const RatExpr raised =
                        p[mu][nu] * (minkowski(mu, mu) * minkowski(nu, nu));
                    out += grad_a[mu] * raised * gap * grad_b[nu];
                }
            }
        }
    }
    out += evaluate(a, g) * reparametrization_defect(b, g);
    out -= evaluate(b, g) * reparametrization_defect(a, g);
    return out;
}

DeltaFunctional parse_functional(const std::string& text, const ContextPtr& ctx) {
    DeltaFunctional out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        std::string atom_text = text.substr(start, end - start);
        start = end + 1;
        const std::size_t at = atom_text.find('@');
        if (at == std::string::npos) {
            throw ParseError("functional atom needs `<observable> @ s=<value>`", 0);
        }
        std::string left = atom_text.substr(0, at);
        std::string right = atom_text.substr(at + 1);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
        };
        trim(left);
        trim(right);
        if (right.rfind("s=", 0) != 0) {
            throw ParseError("functional parameter needs `s=<value>`", 0);
        }
        std::string value = right.substr(2);
        trim(value);
        RatExpr parameter(ctx);
        if (value == "s" || value == "s1" || value == "s2") {
            parameter = RatExpr::variable(ctx, value);
        } else {
            parameter = RatExpr::constant(ctx, Scalar::from_decimal_string(value));
        }
        out.atoms.push_back({parse_scalar(left, ctx), parameter});
        if (end == text.size()) break;
    }
    if (out.atoms.empty()) {
        throw ParseError("empty functional", 0);
    }
    return out;
}

VerificationReport verify_peierls_suite() {
    VerificationReport report("peierls");
    GeodesicSpace space;
    const Geodesic g = symbolic_geodesic(space);
    const RatExpr s = space.var("s");
    const RatExpr s1 = space.var("s1");
    const RatExpr s2 = space.var("s2");
    const auto p = transverse_projector(g);
    auto coordinate_functional = [&](std::size_t mu, const RatExpr& parameter) {
        return DeltaFunctional{{FunctionalAtom{space.var(index_name("x", mu)), parameter}}};
    };

    add_timed_check(report, "bracket.worked-example",
                    "[x^m @ s1, x^n @ s2] = P^{mn}(s1 - s2) + x^m(s1) k^n - x^n(s2) k^m",
                    [&] {
                        ZeroCheck acc{CheckStatus::pass, ""};
                        for (std::size_t mu = 0; mu < 4 && acc.status != CheckStatus::fail;
                             ++mu) {
                            for (std::size_t nu = 0; nu < 4; ++nu) {
                                const RatExpr value =
                                    peierls_bracket(coordinate_functional(mu, s1),
                                                    coordinate_functional(nu, s2), g);
                                const RatExpr raised =
                                    p[mu][nu] * (minkowski(mu, mu) * minkowski(nu, nu));
                                const RatExpr expected =
                                    raised * (s1 - s2) +
                                    g.point(mu, s1) * g.velocity[nu] -
                                    g.point(nu, s2) * g.velocity[mu];
                                acc = combine(acc, classify_equal(value, expected));
                                if (acc.status == CheckStatus::fail) break;
                            }
                        }
                        return acc;
                    });

    add_timed_check(report, "bracket.equal-parameter",
                    "[x^m @ s, x^n @ s] = x^m(s) k^n - x^n(s) k^m", [&] {
                        ZeroCheck acc{CheckStatus::pass, ""};
                        for (std::size_t mu = 0; mu < 4 && acc.status != CheckStatus::fail;
                             ++mu) {
                            for (std::size_t nu = 0; nu < 4; ++nu) {
                                const RatExpr value =
                                    peierls_bracket(coordinate_functional(mu, s),
                                                    coordinate_functional(nu, s), g);
                                const RatExpr expected =
                                    g.point(mu, s) * g.velocity[nu] -
                                    g.point(nu, s) * g.velocity[mu];
                                acc = combine(acc, classify_equal(value, expected));
                                if (acc.status == CheckStatus::fail) break;
                            }
                        }
                        return acc;
                    });

    add_timed_check(report, "bracket.parameter-merge",
                    "substituting s1 = s2 = s in the two-parameter bracket gives the "
                    "equal-parameter bracket",
                    [&] {
                        std::map<std::size_t, RatExpr> merge;
                        merge.emplace(space.universe->index("s1"), s);
                        merge.emplace(space.universe->index("s2"), s);
                        ZeroCheck acc{CheckStatus::pass, ""};
                        for (std::size_t mu = 0; mu < 4 && acc.status != CheckStatus::fail;
                             ++mu) {
                            for (std::size_t nu = 0; nu < 4; ++nu) {
                                const RatExpr two_parameter =
                                    peierls_bracket(coordinate_functional(mu, s1),
                                                    coordinate_functional(nu, s2), g)
                                        .substitute(merge, space.ctx);
                                const RatExpr merged =
                                    peierls_bracket(coordinate_functional(mu, s),
                                                    coordinate_functional(nu, s), g);
                                acc = combine(acc, classify_equal(two_parameter, merged));
                                if (acc.status == CheckStatus::fail) break;
                            }
                        }
                        return acc;
                    });

    add_timed_check(report, "bracket.table-consistency",
                    "the equal-parameter bracket matches the unit-mass coordinate table "
                    "under x -> x(s), p -> k",
                    [&] {
                        MassShellModel unit({{{"m", Scalar(1)}}, Corruption::none});
                        const UniversePtr& ref = unit.shell()->universe();
                        std::map<std::size_t, RatExpr> onto;
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            onto.emplace(ref->index(index_name("x", mu)), g.point(mu, s));
                            onto.emplace(ref->index(index_name("p", mu)), g.velocity[mu]);
                        }
                        onto.emplace(ref->index("m"), space.constant(Scalar(1)));
                        ZeroCheck acc{CheckStatus::pass, ""};
                        for (std::size_t mu = 0; mu < 4 && acc.status != CheckStatus::fail;
                             ++mu) {
                            for (std::size_t nu = 0; nu < 4; ++nu) {
                                const RatExpr carried =
                                    unit.expected_xx(mu, nu).substitute(onto, space.ctx);
                                const RatExpr value =
                                    peierls_bracket(coordinate_functional(mu, s),
                                                    coordinate_functional(nu, s), g);
                                acc = combine(acc, classify_equal(value, carried));
                                if (acc.status == CheckStatus::fail) break;
                            }
                        }
                        return acc;
                    });

    add_timed_check(report, "theta.unit-velocity",
                    "theta on the pure-velocity solution J = k is the constant 1", [&] {
                        JacobiField j{g.velocity,
                                      std::vector<RatExpr>(4, RatExpr(space.ctx))};
                        return classify_equal(theta_eval(g, j, s), space.constant(Scalar(1)));
                    });

    JacobiField j_sym, h_sym;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        j_sym.value.push_back(space.var(index_name("j", mu)));
        j_sym.derivative.push_back(space.var(index_name("jd", mu)));
        h_sym.value.push_back(space.var(index_name("h", mu)));
        h_sym.derivative.push_back(space.var(index_name("hd", mu)));
    }

    add_timed_check(report, "theta.parameter-independence",
                    "theta is independent of the parameter on gauge-compatible solutions",
                    [&] {
                        JacobiField gauge_compatible{transverse_part(g, j_sym.value),
                                                     transverse_part(g, j_sym.derivative)};
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            gauge_compatible.value[mu] +=
                                space.var("b") * g.velocity[mu];
                        }
                        const RatExpr at_s = theta_eval(g, gauge_compatible, s);
                        const RatExpr at_zero =
                            theta_eval(g, gauge_compatible, RatExpr(space.ctx));
                        return combine(classify_equal(at_s, at_zero),
                                       classify_equal(at_zero, space.var("b")));
                    });

    add_timed_check(report, "omega.parameter-independence",
                    "omega computed from J(s), J'(s) does not depend on s", [&] {
                        JacobiField j_shift{j_sym.at(s), j_sym.derivative};
                        JacobiField h_shift{h_sym.at(s), h_sym.derivative};
                        return classify_equal(omega_eval(g, j_shift, h_shift),
                                              omega_eval(g, j_sym, h_sym));
                    });

    add_timed_check(report, "omega.antisymmetry", "omega(J, H) = -omega(H, J)", [&] {
        return classify_equal(omega_eval(g, j_sym, h_sym),
                              -omega_eval(g, h_sym, j_sym));
    });

    add_timed_check(report, "omega.gauge-independence",
                    "adding (a s + b) k to a solution does not change omega", [&] {
                        JacobiField shifted = j_sym;
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            shifted.value[mu] += space.var("b") * g.velocity[mu];
                            shifted.derivative[mu] += space.var("a") * g.velocity[mu];
                        }
                        return classify_equal(omega_eval(g, shifted, h_sym),
                                              omega_eval(g, j_sym, h_sym));
                    });

    add_timed_check(report, "decomposition.reassembly",
                    "J = transverse + (b + a s) k with a = k·J', b = k·J", [&] {
                        const JacobiDecomposition dec = decompose_jacobi_field(g, j_sym);
                        ZeroCheck acc{CheckStatus::pass, ""};
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            acc = combine(acc, classify_equal(dec.transverse.value[mu] +
                                                                  dec.b * g.velocity[mu],
                                                              j_sym.value[mu]));
                            acc = combine(acc,
                                          classify_equal(dec.transverse.derivative[mu] +
                                                             dec.a * g.velocity[mu],
                                                         j_sym.derivative[mu]));
                        }
                        return acc;
                    });

    // Retarded-kernel scalar profile: 0 before the source parameter s, and
    // (s1 - s) after it, evaluated in the observation parameter s1.
    add_timed_check(report, "kernel.flat-branches",
                    "both branches of the kernel profile solve the flat Jacobi equation",
                    [&] {
                        const RatExpr after = s1 - s;
                        const RatExpr before(space.ctx);
                        return combine(
                            classify_zero(
                                after.partial_derivative("s1").partial_derivative("s1")),
                            classify_zero(
                                before.partial_derivative("s1").partial_derivative("s1")));
                    });
    add_timed_check(report, "kernel.continuity",
                    "the kernel profile is continuous across the source parameter", [&] {
                        std::map<std::size_t, RatExpr> at_source;
                        at_source.emplace(space.universe->index("s1"), s);
                        const RatExpr after = (s1 - s).substitute(at_source, space.ctx);
                        return classify_zero(after);
                    });
    add_timed_check(report, "kernel.derivative-jump",
                    "the kernel profile's first derivative jumps by exactly 1", [&] {
                        const RatExpr after = s1 - s;
                        const RatExpr before(space.ctx);
                        const RatExpr jump = after.partial_derivative("s1") -
                                             before.partial_derivative("s1");
                        return classify_equal(jump, space.constant(Scalar(1)));
                    });
    add_timed_check(report, "kernel.projector-idempotent",
                    "P g P = P modulo the unit-velocity constraint", [&] {
                        ZeroCheck acc{CheckStatus::pass, ""};
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            for (std::size_t nu = 0; nu < 4; ++nu) {
                                RatExpr entry(space.ctx);
                                for (std::size_t al = 0; al < 4; ++al) {
                                    entry += p[mu][al] * p[al][nu] * minkowski(al, al);
                                }
                                acc = combine(acc, classify_equal(entry, p[mu][nu]));
                            }
                        }
                        return acc;
                    });

    add_timed_check(report, "reparam.coordinate-control",
                    "a bare coordinate functional is not reparametrization invariant", [&] {
                        const bool invariant =
                            reparam_invariant(coordinate_functional(0, s1), g);
                        return ZeroCheck{invariant ? CheckStatus::fail : CheckStatus::pass,
                                         invariant ? "defect unexpectedly vanished" : ""};
                    });
    add_timed_check(report, "reparam.transverse-invariant",
                    "P_{mu nu} x^mu x^nu is reparametrization invariant", [&] {
                        RatExpr observable(space.ctx);
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            for (std::size_t nu = 0; nu < 4; ++nu) {
                                observable += p[mu][nu] *
                                              space.var(index_name("x", mu)) *
                                              space.var(index_name("x", nu));
                            }
                        }
                        DeltaFunctional f{{FunctionalAtom{observable, s1}}};
                        return classify_zero(reparametrization_defect(f, g));
                    });
    add_timed_check(report, "reparam.constant-invariant",
                    "a constant functional is reparametrization invariant", [&] {
                        DeltaFunctional f{
                            {FunctionalAtom{space.constant(Scalar(5)), s1}}};
                        return classify_zero(reparametrization_defect(f, g));
                    });

    add_timed_check(report, "geodesic.unit-velocity-validation",
                    "rational geodesics accept unit velocities and reject others", [&] {
                        bool ok = true;
                        try {
                            rational_geodesic(space,
                                              {Scalar(0), Scalar(1), Scalar(2), Scalar(3)},
                                              {Scalar(5, 4), Scalar(3, 4), Scalar(0),
                                               Scalar(0)});
                        } catch (const Error&) {
                            ok = false;
                        }
                        try {
                            rational_geodesic(space,
                                              {Scalar(0), Scalar(0), Scalar(0), Scalar(0)},
                                              {Scalar(1), Scalar(1), Scalar(0), Scalar(0)});
                            ok = false;
                        } catch (const Error&) {
                        }
                        return ZeroCheck{ok ? CheckStatus::pass : CheckStatus::fail,
                                         ok ? "" : "unit-velocity validation misbehaved"};
                    });

    return report;
}

} // namespace reeb
