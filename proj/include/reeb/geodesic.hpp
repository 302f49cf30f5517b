#pragma once

#include "reeb/report.hpp"

#include <array>
#include <string>
#include <vector>

namespace reeb {

// Shared symbol space for the time-like geodesic constructions: base point
// q, unit velocity k (k0 solved from k·k = 1), observable coordinates x,
// two symbolic Jacobi fields (j, jd) and (h, hd), parameters s, s1, s2,
// a, b. `ctx` carries the unit-velocity rule; `free_ctx` drops it for
// negative controls.
struct GeodesicSpace {
    GeodesicSpace();

    UniversePtr universe;
    ContextPtr ctx;
    ContextPtr free_ctx;

    RatExpr var(const std::string& name) const { return RatExpr::variable(ctx, name); }
    RatExpr constant(const Scalar& c) const { return RatExpr::constant(ctx, c); }
};

// Affinely parametrized straight world line x(s) = base + s·velocity with
// g(velocity, velocity) = 1.
struct Geodesic {
    std::vector<RatExpr> base;     // q^mu
    std::vector<RatExpr> velocity; // k^mu

    RatExpr point(std::size_t mu, const RatExpr& s) const {
        return base[mu] + s * velocity[mu];
    }
};

// Generic geodesic with symbolic base q and symbolic unit velocity k.
Geodesic symbolic_geodesic(const GeodesicSpace& space);

// Rational-data geodesic; throws Error unless the velocity satisfies
// g(k, k) = 1 exactly.
Geodesic rational_geodesic(const GeodesicSpace& space, const std::array<Scalar, 4>& base,
                           const std::array<Scalar, 4>& velocity);

// Linearized solution J(s) = value + s·derivative along a geodesic.
struct JacobiField {
    std::vector<RatExpr> value;      // J(0)
    std::vector<RatExpr> derivative; // J'(0)

    std::vector<RatExpr> at(const RatExpr& s) const;
};

// Lowered transverse projector P_{mu nu} = g_{mu nu} - k_mu k_nu.
std::vector<std::vector<RatExpr>> transverse_projector(const Geodesic& g);

// v - k·(k_mu v^mu): the velocity-orthogonal part of a vector.
std::vector<RatExpr> transverse_part(const Geodesic& g, const std::vector<RatExpr>& vec);

// Splits J(s) into transverse + (b + a·s)·k with a = k·J'(0), b = k·J(0).
struct JacobiDecomposition {
    RatExpr a;
    RatExpr b;
    JacobiField transverse;
};
JacobiDecomposition decompose_jacobi_field(const Geodesic& g, const JacobiField& j);

// k_mu J^mu(s): the contact pairing along the geodesic.
RatExpr theta_eval(const Geodesic& g, const JacobiField& j, const RatExpr& s);

// J1·P·J2' - J1'·P·J2: the conserved symplectic pairing of two linearized
// solutions (independent of the evaluation parameter).
RatExpr omega_eval(const Geodesic& g, const JacobiField& j1, const JacobiField& j2);

// Sum of point observables F_i(x(s_i)).
struct FunctionalAtom {
    RatExpr observable; // expression in x0..x3 (parameters allowed)
    RatExpr parameter;  // rational value or one of the symbols s, s1, s2
};

struct DeltaFunctional {
    std::vector<FunctionalAtom> atoms;
};

// Value of the functional on the geodesic: substitutes x -> x(s_i).
RatExpr evaluate(const DeltaFunctional& f, const Geodesic& g);

// Σ_i k^mu (@F_i/@x^mu)(x(s_i)); zero (mod k·k = 1) exactly for
// reparametrization-invariant functionals.
RatExpr reparametrization_defect(const DeltaFunctional& f, const Geodesic& g);
bool reparam_invariant(const DeltaFunctional& f, const Geodesic& g);

// Peierls bracket of two delta functionals on the space of time-like
// geodesics, collapsed to the finite combination
//   Σ_{ij} @F^A_mu(s_i) P^{mu nu} (s_i - s_j) @F^B_nu(s_j)
//   + A[γ] Σ_j k^nu @F^B_nu(s_j) - B[γ] Σ_i k^mu @F^A_mu(s_i).
RatExpr peierls_bracket(const DeltaFunctional& a, const DeltaFunctional& b,
                        const Geodesic& g);

// Atoms are ';'-separated `<observable> @ s=<value>` with rational values or
// the parameter symbols s, s1, s2.
DeltaFunctional parse_functional(const std::string& text, const ContextPtr& ctx);

VerificationReport verify_peierls_suite();

} // namespace reeb
