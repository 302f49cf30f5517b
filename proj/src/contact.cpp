#include "reeb/contact.hpp"

#include "reeb/errors.hpp"
#include "reeb/linsolve.hpp"

#include <numeric>

namespace reeb {

std::string to_string(VolumeMode mode) {
    return mode == VolumeMode::standard ? "standard" : "paper";
}

ContactStructure::ContactStructure(ChartPtr chart, DifferentialForm theta, VolumeMode mode)
    : chart_(std::move(chart)),
      mode_(mode),
      n_(0),
      theta_(std::move(theta)),
      dtheta_(exterior_derivative(theta_)),
      volume_(theta_.chart(), 0),
      dtheta_nm1_(theta_.chart(), 0),
      dtheta_n_(theta_.chart(), 0) {
    check_same_chart(chart_, theta_.chart());
    if (theta_.degree() != 1) {
        throw NotContact("contact form must have degree 1");
    }
    const std::size_t dim = chart_->dim();
    if (dim % 2 == 0) {
        throw EvenDimension("contact charts are odd-dimensional, got dimension " +
                            std::to_string(dim));
    }
    if (dim < 3) {
        throw NotContact("the volume bracket needs dimension 2n+1 with n >= 1, got " +
                         std::to_string(dim));
    }
    n_ = static_cast<unsigned>(dim / 2);
    dtheta_nm1_ = wedge_power(dtheta_, n_ - 1);
    dtheta_n_ = wedge(dtheta_nm1_, dtheta_);
    volume_ = wedge(theta_, dtheta_n_);
    top_.resize(dim);
    std::iota(top_.begin(), top_.end(), 0);
    if (volume_.component(top_).is_zero()) {
        throw NotContact("theta /\\ (d theta)^n vanishes identically");
    }
}

const MultivectorField& ContactStructure::reeb() const {
    if (reeb_) {
        return *reeb_;
    }
    const std::size_t dim = chart_->dim();
    // Unknowns: the components of Γ on the chart basis. One row for
    // i_Γθ = 1, then one per basis one-form of i_Γdθ = 0.
    std::vector<MultivectorField> basis_vectors;
    basis_vectors.reserve(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        basis_vectors.push_back(
            MultivectorField::coordinate_vector(chart_, chart_->basis_name(a)));
    }
    std::vector<DifferentialForm> contractions;
    contractions.reserve(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        contractions.push_back(interior_product(basis_vectors[a], dtheta_));
    }
    const RatExpr zero = RatExpr::constant(chart_->context(), Scalar(0));
    std::vector<std::vector<RatExpr>> rows;
    std::vector<RatExpr> rhs;
    {
        std::vector<RatExpr> row;
        row.reserve(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            row.push_back(theta_.component({a}));
        }
        rows.push_back(std::move(row));
        rhs.push_back(RatExpr::constant(chart_->context(), Scalar(1)));
    }
    for (std::size_t b = 0; b < dim; ++b) {
        std::vector<RatExpr> row;
        row.reserve(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            row.push_back(contractions[a].component({b}));
        }
        rows.push_back(std::move(row));
        rhs.push_back(zero);
    }
    LinearSolveResult solved = linear_solve(std::move(rows), std::move(rhs));
    if (solved.status != LinearSolveResult::Status::unique) {
        throw SolveFailed("Reeb system is not uniquely solvable");
    }
    MultivectorField gamma(chart_, 1);
    for (std::size_t a = 0; a < dim; ++a) {
        gamma.add_component({a}, solved.particular[a]);
    }
    reeb_ = std::move(gamma);
    return *reeb_;
}

RatExpr ContactStructure::volume_bracket(const RatExpr& f, const RatExpr& g) const {
    const DifferentialForm df = differential(chart_, f);
    const DifferentialForm dg = differential(chart_, g);
    const long c1 = mode_ == VolumeMode::paper ? static_cast<long>(n_) - 1
                                               : static_cast<long>(n_);
    DifferentialForm lhs =
        wedge(wedge(df, dg), wedge(theta_, dtheta_nm1_)) * Scalar(c1);
    lhs += wedge(dg * f - df * g, dtheta_n_);
    return lhs.component(top_) / volume_.component(top_);
}

JacobiPair ContactStructure::extract_pair() const {
    const MultivectorField& gamma = reeb();
    const std::size_t dim = chart_->dim();
    std::vector<RatExpr> coords;
    coords.reserve(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        coords.push_back(RatExpr::variable(chart_->context(), chart_->basis()[a]));
    }
    MultivectorField lambda(chart_, 2);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a + 1; b < dim; ++b) {
            RatExpr entry = volume_bracket(coords[a], coords[b]);
            entry -= coords[a] * gamma.apply(coords[b]);
            entry += coords[b] * gamma.apply(coords[a]);
            lambda.add_component({a, b}, entry);
        }
    }
    return {std::move(lambda), gamma};
}

ZeroCheck ContactStructure::reeb_contraction_check() const {
    return classify_equal(interior_product(reeb(), volume_), dtheta_n_);
}

ZeroCheck ContactStructure::lambda_normalization_check(const MultivectorField& lambda) const {
    return classify_equal(interior_product(lambda, volume_),
                          wedge(theta_, dtheta_nm1_) * Scalar(static_cast<long>(n_)));
}

RatExpr lambda_pairing(const MultivectorField& lambda, const RatExpr& f, const RatExpr& g) {
    if (lambda.degree() != 2) {
        throw Error("lambda_pairing expects a bivector");
    }
    const ChartPtr& chart = lambda.chart();
    const DifferentialForm df = differential(chart, f);
    const DifferentialForm dg = differential(chart, g);
    RatExpr out = RatExpr::constant(chart->context(), Scalar(0));
    for (const auto& [idx, coeff] : lambda.components()) {
        const std::size_t a = idx[0], b = idx[1];
        out += coeff * (df.component({a}) * dg.component({b}) -
                        df.component({b}) * dg.component({a}));
    }
    return out;
}

MultivectorField contract_first_slot(const MultivectorField& bivector,
                                     const DifferentialForm& one_form) {
    if (bivector.degree() != 2 || one_form.degree() != 1) {
        throw Error("contract_first_slot expects a bivector and a one-form");
    }
    check_same_chart(bivector.chart(), one_form.chart());
    MultivectorField out(bivector.chart(), 1);
    for (const auto& [idx, coeff] : bivector.components()) {
        const std::size_t a = idx[0], b = idx[1];
        out.add_component({b}, coeff * one_form.component({a}));
        out.add_component({a}, -(coeff * one_form.component({b})));
    }
    return out;
}

RatExpr jacobi_bracket(const JacobiPair& pair, const RatExpr& f, const RatExpr& g) {
    return lambda_pairing(pair.lambda, f, g) + f * pair.gamma.apply(g) -
           g * pair.gamma.apply(f);
}

MultivectorField hamiltonian_field(const JacobiPair& pair, const RatExpr& f) {
    MultivectorField x = contract_first_slot(pair.lambda, differential(pair.lambda.chart(), f));
    x += pair.gamma * f;
    return x;
}

MultivectorField lambda_lambda_defect(const JacobiPair& pair) {
    return schouten_bracket(pair.lambda, pair.lambda) -
           wedge(pair.gamma, pair.lambda) * Scalar(2);
}

MultivectorField gamma_invariance_defect(const JacobiPair& pair) {
    return schouten_bracket(pair.gamma, pair.lambda);
}

RatExpr jacobi_identity_defect(const JacobiPair& pair, const RatExpr& f, const RatExpr& g,
                               const RatExpr& h) {
    return jacobi_bracket(pair, f, jacobi_bracket(pair, g, h)) -
           jacobi_bracket(pair, jacobi_bracket(pair, f, g), h) -
           jacobi_bracket(pair, g, jacobi_bracket(pair, f, h));
}

RatExpr leibniz_defect(const JacobiPair& pair, const RatExpr& f, const RatExpr& g,
                       const RatExpr& h) {
    const RatExpr one = RatExpr::constant(f.context(), Scalar(1));
    return jacobi_bracket(pair, f, g * h) - jacobi_bracket(pair, f, g) * h -
           g * jacobi_bracket(pair, f, h) + jacobi_bracket(pair, f, one) * g * h;
}

bool is_poisson_element(const JacobiPair& pair, const RatExpr& f) {
    return pair.gamma.apply(f).is_zero();
}

namespace {

// Decide a + b·w != 0 under w² = α·w + β with rational a, b, α, β: when
// b != 0, vanishing forces w = −a/b, hence a² + αab − βb² = 0.
bool linear_in_solved_nonzero(const Poly& p, const ContextPtr& spec_ctx) {
    std::vector<std::size_t> present;
    const std::size_t width = p.universe()->size();
    for (std::size_t v = 0; v < width; ++v) {
        if (p.contains(v)) {
            present.push_back(v);
        }
    }
    if (present.empty()) {
        return !p.is_zero();
    }
    if (present.size() > 1) {
        throw Error("witness evaluation supports a single solved symbol");
    }
    const std::size_t w = present[0];
    const Poly* rule = spec_ctx->rule_for(w);
    if (rule == nullptr) {
        throw Error("witness assignment must cover the free symbol " +
                    p.universe()->name(w));
    }
    Scalar a(0), b(0), alpha(0), beta(0);
    for (const auto& [mono, coeff] : p.terms()) {
        if (mono_degree(mono) == 0) {
            a = coeff;
        } else {
            b = coeff;
        }
    }
    for (const auto& [mono, coeff] : rule->terms()) {
        if (mono_degree(mono) == 0) {
            beta = coeff;
        } else {
            alpha = coeff;
        }
    }
    if (b.is_zero()) {
        return !a.is_zero();
    }
    return !(a * a + alpha * a * b - beta * b * b).is_zero();
}

} // namespace

bool nonzero_at(const RatExpr& value, const std::map<std::string, Scalar>& assignment) {
    const UniversePtr& universe = value.universe();
    std::map<std::size_t, Scalar> by_index;
    for (const auto& [name, scalar] : assignment) {
        by_index.emplace(universe->index(name), scalar);
    }
    RatExpr specialized = value.substitute_scalars(by_index);
    if (!linear_in_solved_nonzero(specialized.den(), specialized.context())) {
        return false; // witness hits a pole; caller should pick another point
    }
    return linear_in_solved_nonzero(specialized.num(), specialized.context());
}

std::string ModeExperiment::selected() const {
    if (!exactly_one()) {
        return "ambiguous";
    }
    return standard_agrees ? "standard" : "paper";
}

ModeExperiment run_mode_experiment(const ChartPtr& chart, const DifferentialForm& theta,
                                   const JacobiPair& displayed) {
    ModeExperiment out;
    const ContactStructure standard(chart, theta, VolumeMode::standard);
    const ContactStructure paper(chart, theta, VolumeMode::paper);
    out.standard_agrees = true;
    out.paper_agrees = true;
    const std::size_t dim = chart->dim();
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a + 1; b < dim; ++b) {
            const RatExpr fa = RatExpr::variable(chart->context(), chart->basis()[a]);
            const RatExpr fb = RatExpr::variable(chart->context(), chart->basis()[b]);
            const RatExpr reference = jacobi_bracket(displayed, fa, fb);
            if (!standard.volume_bracket(fa, fb).equal_mod(reference)) {
                out.standard_agrees = false;
            }
            if (!paper.volume_bracket(fa, fb).equal_mod(reference)) {
                out.paper_agrees = false;
            }
        }
    }
    return out;
}

} // namespace reeb
