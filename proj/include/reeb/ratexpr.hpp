#pragma once

#include "reeb/constraint.hpp"

#include <map>
#include <string>

namespace reeb {

// Rational expression: an exact fraction of polynomials kept in normal form
// modulo the quadric rules of its context. The quotient rings in play are
// integral domains (every rule's right-hand side is a non-square), so
// cross-multiplication decides equality and any nonzero denominator is
// legitimate.
//
// Normalization: numerator and denominator are reduced, the denominator is
// rationalized free of solved variables via quadratic conjugates, a common
// monomial factor is cancelled, exact polynomial quotients are taken when
// they exist, and the denominator is scaled to leading coefficient 1. Full
// gcd cancellation is deferred to canonical(), which printing applies on
// demand; equality of unequal-looking fractions is always exact via
// equal_mod().
class RatExpr {
public:
    explicit RatExpr(ContextPtr ctx); // zero
    static RatExpr constant(ContextPtr ctx, const Scalar& c);
    static RatExpr variable(ContextPtr ctx, std::size_t idx);
    static RatExpr variable(ContextPtr ctx, const std::string& name);
    static RatExpr from_poly(Poly p, ContextPtr ctx);
    static RatExpr fraction(Poly num, Poly den, ContextPtr ctx);

    const ContextPtr& context() const { return ctx_; }
    const UniversePtr& universe() const { return ctx_->universe(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Scalar constant_value() const;
    // Degree-based size estimate used for pivot selection.
    unsigned complexity() const;

    RatExpr operator-() const;
    RatExpr& operator+=(const RatExpr& o);
    RatExpr& operator-=(const RatExpr& o);
    RatExpr& operator*=(const RatExpr& o);
    RatExpr& operator/=(const RatExpr& o);
    friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }
    friend RatExpr operator-(RatExpr a, const RatExpr& b) { return a -= b; }
    friend RatExpr operator*(RatExpr a, const RatExpr& b) { return a *= b; }
    friend RatExpr operator/(RatExpr a, const RatExpr& b) { return a /= b; }
    RatExpr operator*(const Scalar& c) const;
    RatExpr pow(int n) const;

    // Exact equality in the quotient field, independent of representation.
    bool equal_mod(const RatExpr& other) const;
    // Representation equality (same normal form); equal_mod is the
    // mathematical notion, == is the cheap syntactic one.
    friend bool operator==(const RatExpr& a, const RatExpr& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatExpr& a, const RatExpr& b) { return !(a == b); }

    // Partial derivative in direction `var`, treating every solved variable
    // w as the implicit function cut out by w^2 = R(w, ...):
    //   dw/du = D_u(R) / (2w - dR/dw).
    // Differentiating with respect to a solved variable is an error.
    RatExpr partial_derivative(std::size_t var) const;
    RatExpr partial_derivative(const std::string& name) const;

    // The implicit derivative dw/du itself (zero for unsolved w != u).
    static RatExpr coordinate_derivative(const ContextPtr& ctx, std::size_t w, std::size_t u);

    bool free_of(std::size_t var) const;

    // Substitute variables by expressions over a target context. Unmapped
    // variables fall back to the same-named variable of the target universe.
    RatExpr substitute(const std::map<std::size_t, RatExpr>& map, const ContextPtr& target) const;
    // Substitute scalars for some variables, staying in this context but
    // with the rules specialized accordingly (helper for witness checks).
    RatExpr substitute_scalars(const std::map<std::size_t, Scalar>& values) const;

    // Fully cancelled representative (polynomial gcd of numerator and
    // denominator); cheap no-op for monomial denominators.
    RatExpr canonical() const;
    std::string to_string() const;

private:
    RatExpr(Poly num, Poly den, ContextPtr ctx, bool already_reduced);
    void normalize(bool already_reduced);
    RatExpr derivative_of_poly(const Poly& p, std::size_t var) const;

    ContextPtr ctx_;
    Poly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const RatExpr& e);

// Context with every rule's right-hand side specialized by the given scalar
// values; used to evaluate expressions at a rational witness point while
// solved variables stay symbolic.
ContextPtr specialize_context(const ContextPtr& ctx,
                              const std::map<std::size_t, Scalar>& values);

} // namespace reeb
