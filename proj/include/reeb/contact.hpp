#pragma once

#include "reeb/forms.hpp"
#include "reeb/report.hpp"

#include <map>
#include <optional>
#include <string>

namespace reeb {

// Coefficient in front of the df/\dg term of the volume-form bracket
// definition [f,g]·θ∧(dθ)^n = c₁·df∧dg∧θ∧(dθ)^{n−1} + (f dg − g df)∧(dθ)^n.
// `standard` uses c₁ = n, `paper` uses c₁ = n − 1; which one matches the
// bivector-pair bracket is an experiment the reports record.
enum class VolumeMode { standard, paper };

std::string to_string(VolumeMode mode);

// Bivector/vector pair presenting a Jacobi bracket:
// [f,g] = Λ(df,dg) + f·Γ(g) − g·Γ(f).
struct JacobiPair {
    MultivectorField lambda;
    MultivectorField gamma;
};

// A one-form whose top wedge power with its differential is a volume form
// on an odd-dimensional chart. Owns the cached powers of dθ and the Reeb
// field, and derives the Jacobi bracket of the structure.
class ContactStructure {
public:
    ContactStructure(ChartPtr chart, DifferentialForm theta,
                     VolumeMode mode = VolumeMode::standard);

    const ChartPtr& chart() const { return chart_; }
    unsigned n() const { return n_; } // dim = 2n + 1
    VolumeMode mode() const { return mode_; }

    const DifferentialForm& theta() const { return theta_; }
    const DifferentialForm& dtheta() const { return dtheta_; }
    const DifferentialForm& volume() const { return volume_; }

    // Unique field with i_Γθ = 1 and i_Γdθ = 0, from an exact linear solve.
    const MultivectorField& reeb() const;

    // [f,g] read off the volume-form definition.
    RatExpr volume_bracket(const RatExpr& f, const RatExpr& g) const;

    // Γ from the Reeb solve; Λ^{ab} = [u^a,u^b] − u^a·Γ(u^b) + u^b·Γ(u^a)
    // over the chart's free coordinate pairs.
    JacobiPair extract_pair() const;

    // i_Γ(θ∧(dθ)^n) = (dθ)^n.
    ZeroCheck reeb_contraction_check() const;
    // i_Λ(θ∧(dθ)^n) = n·θ∧(dθ)^{n−1}.
    ZeroCheck lambda_normalization_check(const MultivectorField& lambda) const;

private:
    ChartPtr chart_;
    VolumeMode mode_;
    unsigned n_;
    DifferentialForm theta_, dtheta_, volume_;
    DifferentialForm dtheta_nm1_, dtheta_n_;
    IdxTuple top_;
    mutable std::optional<MultivectorField> reeb_;
};

// Λ(df, dg).
RatExpr lambda_pairing(const MultivectorField& lambda, const RatExpr& f, const RatExpr& g);

// Λ(ω, ·) for a bivector and a one-form: the first slot contracts.
MultivectorField contract_first_slot(const MultivectorField& bivector,
                                     const DifferentialForm& one_form);

RatExpr jacobi_bracket(const JacobiPair& pair, const RatExpr& f, const RatExpr& g);

// X_f = Λ(df, ·) + f·Γ.
MultivectorField hamiltonian_field(const JacobiPair& pair, const RatExpr& f);

// [Λ,Λ]_S − 2·Γ∧Λ; zero for a Jacobi pair.
MultivectorField lambda_lambda_defect(const JacobiPair& pair);
// L_ΓΛ = [Γ,Λ]_S; zero for a Jacobi pair.
MultivectorField gamma_invariance_defect(const JacobiPair& pair);

// [f,[g,h]] − [[f,g],h] − [g,[f,h]].
RatExpr jacobi_identity_defect(const JacobiPair& pair, const RatExpr& f, const RatExpr& g,
                               const RatExpr& h);
// [f,gh] − [f,g]h − g[f,h] + [f,1]gh.
RatExpr leibniz_defect(const JacobiPair& pair, const RatExpr& f, const RatExpr& g,
                       const RatExpr& h);

// L_Γf = 0: f lies in the Poisson subalgebra of the Jacobi bracket.
bool is_poisson_element(const JacobiPair& pair, const RatExpr& f);

// Exact nonvanishing of a scalar at a rational point: every free coordinate
// and parameter is assigned, solved coordinates stay symbolic and are
// decided through their specialized quadric rule (a + b·w with w² = αw + β
// vanishes only if a² + αab − βb² does).
bool nonzero_at(const RatExpr& value, const std::map<std::string, Scalar>& assignment);

// Outcome of running the volume bracket in both modes against a displayed
// bivector-pair bracket on every free coordinate pair.
struct ModeExperiment {
    bool standard_agrees = false;
    bool paper_agrees = false;

    bool exactly_one() const { return standard_agrees != paper_agrees; }
    std::string selected() const;
};

ModeExperiment run_mode_experiment(const ChartPtr& chart, const DifferentialForm& theta,
                                   const JacobiPair& displayed);

} // namespace reeb
