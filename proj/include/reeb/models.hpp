#pragma once

#include "reeb/contact.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace reeb {

// Minkowski metric diag(+,-,-,-); identical with raised or lowered indices.
Scalar minkowski(std::size_t mu, std::size_t nu);

// Verification-suite sabotage hook for negative controls: corrupts one
// stored component of the named tensor before the checks run.
enum class Corruption { none, lambda, gamma, theta, generator };

Corruption corruption_from_string(const std::string& text);

struct ModelOptions {
    // Parameter specializations (e.g. m = 1); coordinate names are rejected.
    std::map<std::string, Scalar> specialize;
    Corruption corruption = Corruption::none;
    // Volume-bracket coefficient used for extraction; `paper` is the
    // rejected alternative and makes the derived checks fail visibly.
    VolumeMode mode = VolumeMode::standard;
};

// One named generator function together with its displayed vector field.
struct Generator {
    std::string name;
    RatExpr function;
    MultivectorField field;
};

// Cotangent-bundle model over the quadric p·p = m²: contact form from the
// tautological one-form, derived Jacobi pair, bracket table, Poincare
// generator algebra.
class MassShellModel {
public:
    explicit MassShellModel(ModelOptions opts = {});

    const ChartPtr& ambient() const { return ambient_; }
    const ChartPtr& shell() const { return shell_; }
    const ContactStructure& contact() const { return *contact_; }
    const JacobiPair& pair() const { return *pair_; }
    const JacobiPair& displayed() const { return *displayed_; }
    const RatExpr& mass_squared() const { return m2_; }

    RatExpr scalar(const std::string& text) const { return shell_->scalar(text); }
    RatExpr bracket(const RatExpr& f, const RatExpr& g) const;

    // P0..P3, M01..M23 with their displayed vector fields on the shell.
    const std::vector<Generator>& generators() const { return generators_; }

    RatExpr expected_xx(std::size_t r, std::size_t s) const;
    RatExpr expected_px(std::size_t r, std::size_t s) const;

    std::string table_text() const;
    VerificationReport verify() const;

    // Pullback of factor·θ₀ for a factor depending only on p·p; returns the
    // constant it contracts to on the shell. Throws NotCasimirFunction.
    struct ConformalResult {
        ZeroCheck check;
        RatExpr constant;
    };
    ConformalResult conformal_invariance_check(const RatExpr& ambient_factor) const;

private:
    RatExpr coordinate(const std::string& name) const;
    void build_generators();
    void check_table() const;

    ModelOptions opts_;
    ChartPtr ambient_;
    ChartPtr shell_;
    RatExpr m2_;
    std::optional<ContactStructure> contact_;
    std::optional<JacobiPair> pair_;
    std::optional<JacobiPair> displayed_;
    std::optional<SmoothMap> immersion_;
    std::vector<Generator> generators_;
};

// Two-copies-of-spacetime model over (x−y)·(x−y) = m², with the contact
// form obtained from the generating function S = (x−y)·(x−y).
class TwoPointModel {
public:
    explicit TwoPointModel(ModelOptions opts = {});

    const ChartPtr& ambient() const { return ambient_; }
    const ChartPtr& surface() const { return surface_; }
    const ContactStructure& contact() const { return *contact_; }
    const JacobiPair& pair() const { return *pair_; }
    const JacobiPair& displayed() const { return *displayed_; }

    RatExpr scalar(const std::string& text) const { return surface_->scalar(text); }
    RatExpr bracket(const RatExpr& f, const RatExpr& g) const;

    const std::vector<Generator>& generators() const { return generators_; }

    // x+y and x−y coordinate combinations.
    RatExpr sum_coord(std::size_t mu) const;
    RatExpr diff_coord(std::size_t mu) const;

    std::string table_text() const;
    VerificationReport verify() const;

private:
    RatExpr coordinate(const std::string& name) const;
    void build_generators();
    void check_table() const;

    ModelOptions opts_;
    ChartPtr ambient_;
    ChartPtr surface_;
    RatExpr m2_;
    std::optional<ContactStructure> contact_;
    std::optional<JacobiPair> pair_;
    std::optional<JacobiPair> displayed_;
    std::vector<Generator> generators_;
};

// Tangent-bundle model over v·v = 1 in proper-time gauge: Θ = g_{μν}v^ν dx^μ,
// Ω = P_{μν} dv^μ ∧ dx^ν with the transverse projector P.
class LagrangianModel {
public:
    explicit LagrangianModel(ModelOptions opts = {});

    const ChartPtr& ambient() const { return ambient_; }
    const ChartPtr& surface() const { return surface_; }
    const ContactStructure& contact() const { return *contact_; }
    const JacobiPair& pair() const { return *pair_; }
    const DifferentialForm& omega() const { return *omega_; }

    RatExpr scalar(const std::string& text) const { return surface_->scalar(text); }
    RatExpr bracket(const RatExpr& f, const RatExpr& g) const;

    std::string table_text() const;
    VerificationReport verify() const;

private:
    ModelOptions opts_;
    ChartPtr ambient_;
    ChartPtr surface_;
    std::optional<ContactStructure> contact_;
    std::optional<JacobiPair> pair_;
    std::optional<DifferentialForm> omega_;
};

VerificationReport verify_mass_shell(ModelOptions opts = {});
VerificationReport verify_two_point(ModelOptions opts = {});
VerificationReport verify_lagrangian(ModelOptions opts = {});

} // namespace reeb
