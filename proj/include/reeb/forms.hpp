#pragma once

#include "reeb/cancel.hpp"
#include "reeb/chart.hpp"

#include <map>
#include <string>
#include <vector>

namespace reeb {

// Strictly increasing positions into a chart's basis() list.
using IdxTuple = std::vector<std::size_t>;

// Sort a tuple into increasing order, returning the permutation sign, or 0
// when an index repeats.
int sort_tuple(IdxTuple& t);

// Antisymmetric covariant tensor field of one homogeneous degree, stored
// sparsely on increasing basis tuples.
class DifferentialForm {
public:
    DifferentialForm(ChartPtr chart, unsigned degree);
    static DifferentialForm from_scalar(ChartPtr chart, RatExpr value);
    // d(name): unit basis 1-form for a free coordinate; the chain-rule
    // expansion sum (dw/du) du for a solved one; zero for a parameter.
    static DifferentialForm coordinate_differential(ChartPtr chart, const std::string& name);

    const ChartPtr& chart() const { return chart_; }
    unsigned degree() const { return degree_; }
    const std::map<IdxTuple, RatExpr>& components() const { return comps_; }

    RatExpr component(IdxTuple idx) const; // any order, sign-adjusted
    void add_component(IdxTuple idx, const RatExpr& value);
    bool is_zero() const { return comps_.empty(); }

    DifferentialForm operator-() const;
    DifferentialForm& operator+=(const DifferentialForm& o);
    DifferentialForm& operator-=(const DifferentialForm& o);
    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) {
        return a += b;
    }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) {
        return a -= b;
    }
    DifferentialForm operator*(const RatExpr& f) const;
    DifferentialForm operator*(const Scalar& c) const;

    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);
    friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) {
        return !(a == b);
    }
    // Componentwise equal_mod; representation-independent equality.
    bool equal_mod(const DifferentialForm& o) const;

    std::string to_string() const;

private:
    ChartPtr chart_;
    unsigned degree_;
    std::map<IdxTuple, RatExpr> comps_;
};

// Antisymmetric contravariant tensor field (multivector field) of one
// homogeneous degree.
class MultivectorField {
public:
    MultivectorField(ChartPtr chart, unsigned degree);
    static MultivectorField from_scalar(ChartPtr chart, RatExpr value);
    // @name: unit basis vector of a free coordinate.
    static MultivectorField coordinate_vector(ChartPtr chart, const std::string& name);

    const ChartPtr& chart() const { return chart_; }
    unsigned degree() const { return degree_; }
    const std::map<IdxTuple, RatExpr>& components() const { return comps_; }

    RatExpr component(IdxTuple idx) const;
    void add_component(IdxTuple idx, const RatExpr& value);
    bool is_zero() const { return comps_.empty(); }

    MultivectorField operator-() const;
    MultivectorField& operator+=(const MultivectorField& o);
    MultivectorField& operator-=(const MultivectorField& o);
    friend MultivectorField operator+(MultivectorField a, const MultivectorField& b) {
        return a += b;
    }
    friend MultivectorField operator-(MultivectorField a, const MultivectorField& b) {
        return a -= b;
    }
    MultivectorField operator*(const RatExpr& f) const;
    MultivectorField operator*(const Scalar& c) const;

    friend bool operator==(const MultivectorField& a, const MultivectorField& b);
    friend bool operator!=(const MultivectorField& a, const MultivectorField& b) {
        return !(a == b);
    }
    bool equal_mod(const MultivectorField& o) const;

    // Apply a 1-vector field to a scalar as a derivation.
    RatExpr apply(const RatExpr& f) const;

    std::string to_string() const;

private:
    ChartPtr chart_;
    unsigned degree_;
    std::map<IdxTuple, RatExpr> comps_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b,
                       const CancelToken& tok = {});
DifferentialForm wedge_power(const DifferentialForm& a, unsigned k,
                             const CancelToken& tok = {});
MultivectorField wedge(const MultivectorField& a, const MultivectorField& b,
                       const CancelToken& tok = {});

// d(f dx^I) = df /\ dx^I, using intrinsic derivatives along the basis.
DifferentialForm exterior_derivative(const DifferentialForm& a, const CancelToken& tok = {});
// df as a 1-form.
DifferentialForm differential(const ChartPtr& chart, const RatExpr& f);

// Interior product i_T w. For a decomposable T = X1 /\ ... /\ Xp the slots
// fill left to right: i_T w = w(X1, ..., Xp, . , ...).
DifferentialForm interior_product(const MultivectorField& t, const DifferentialForm& w,
                                  const CancelToken& tok = {});

// Cartan formula for forms; Schouten bracket reduction for fields.
DifferentialForm lie_derivative(const MultivectorField& x, const DifferentialForm& w,
                                const CancelToken& tok = {});
MultivectorField lie_derivative(const MultivectorField& x, const MultivectorField& t,
                                const CancelToken& tok = {});

// Schouten bracket, graded so that [X, f] = X(f) for a vector field and
// [T, S] = -(-1)^((p-1)(q-1)) [S, T].
MultivectorField schouten_bracket(const MultivectorField& a, const MultivectorField& b,
                                  const CancelToken& tok = {});

DifferentialForm pullback(const SmoothMap& map, const DifferentialForm& w,
                          const CancelToken& tok = {});

// Express an ambient multivector in the basis of a chart that solves some
// of the ambient coordinates. Writing the ambient coordinate vector along a
// free direction u as E_u - (dw/du) N_w and along a solved direction w as
// N_w, the expansion must shed every N term (tangency); what remains are
// the intrinsic components. Throws NotTangent otherwise.
MultivectorField restrict_to_chart(const MultivectorField& ambient, const ChartPtr& chart,
                                   const CancelToken& tok = {});

} // namespace reeb
