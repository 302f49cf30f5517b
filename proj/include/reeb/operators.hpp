#pragma once

#include "reeb/chart.hpp"
#include "reeb/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace reeb {

// Linear differential operator Σ_α c_α(u) ∂^α on a chart without solved
// coordinates. The multi-index α runs over the chart's coordinates in
// declaration order; coefficients are rational expressions over the chart's
// context and may involve parameters.
class DifferentialOperator {
public:
    explicit DifferentialOperator(ChartPtr chart); // zero operator

    static DifferentialOperator multiplication(ChartPtr chart, const RatExpr& f);

    const ChartPtr& chart() const { return chart_; }
    const std::map<Mono, RatExpr, GradedLexLess>& terms() const { return terms_; }

    void add_term(Mono alpha, const RatExpr& coeff);
    RatExpr coefficient(const Mono& alpha) const; // zero when absent

    bool is_zero() const { return terms_.empty(); }
    unsigned order() const;
    // True when every coefficient is free of the chart coordinates.
    bool has_constant_coefficients() const;

    RatExpr apply(const RatExpr& f) const;

    // Composition via the general Leibniz rule,
    //   ∂^α (d g) = Σ_{γ≤α} binom(α,γ) (∂^γ d) ∂^{α-γ} g.
    DifferentialOperator compose(const DifferentialOperator& other) const;
    DifferentialOperator commutator(const DifferentialOperator& other) const;

    DifferentialOperator operator-() const;
    DifferentialOperator& operator+=(const DifferentialOperator& o);
    DifferentialOperator& operator-=(const DifferentialOperator& o);
    friend DifferentialOperator operator+(DifferentialOperator a,
                                          const DifferentialOperator& b) {
        return a += b;
    }
    friend DifferentialOperator operator-(DifferentialOperator a,
                                          const DifferentialOperator& b) {
        return a -= b;
    }
    DifferentialOperator operator*(const RatExpr& f) const;    // left multiply
    DifferentialOperator operator*(const Scalar& c) const;

    // Terms look like `c*d2(x0)*d1(x1)`; a bare coefficient is an order-0
    // term. Matches the grammar accepted by parse_operator.
    std::string to_string() const;

private:
    ChartPtr chart_;
    std::map<Mono, RatExpr, GradedLexLess> terms_;
};

// d'Alembert operator g^{mu nu} ∂_mu ∂_nu over the chart coordinates
// x0..x3 with the diag(+,-,-,-) metric.
DifferentialOperator wave_operator(const ChartPtr& chart);

// Grammar: sum of terms; term = '*'-joined factors; factor = `d<k>(<coord>)`
// or any scalar expression the chart can parse (numbers, parameters,
// powers, parenthesized subexpressions).
DifferentialOperator parse_operator(const std::string& text, const ChartPtr& chart);

// Order-k symbol by iterated commutators with multiplication by s:
//   σ_k(D)(s) = (1/k!) [[...[D, s], s], ..., s]  (k commutators).
// The iterated commutator must be multiplication by a function
// (NotMultiplication otherwise); returns that function divided by k!.
RatExpr iterated_symbol(const DifferentialOperator& op, const RatExpr& s, unsigned k);
// The same without the 1/k! normalization.
RatExpr iterated_commutator_value(const DifferentialOperator& op, const RatExpr& s,
                                  unsigned k);

// High-frequency limit of e^{-phase} D e^{phase}: every ∂_mu is replaced by
// the covector component momentum[mu] (one entry per chart coordinate).
// Coefficients must be free of the chart coordinates
// (NonConstantCoefficients otherwise).
RatExpr plane_wave_conjugation(const DifferentialOperator& op,
                               const std::vector<RatExpr>& momentum);

// g^{mu nu} @s/@x^mu @s/@x^nu - c over the four directions x0..x3 of the
// given chart.
RatExpr hj_residual(const ChartPtr& chart, const RatExpr& s, const RatExpr& c);

VerificationReport verify_operator_suite();

} // namespace reeb
