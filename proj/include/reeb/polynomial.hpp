#pragma once

#include "reeb/scalar.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace reeb {

// Ordered list of the symbols a computation may mention. Every polynomial
// carries a shared pointer to its universe; the declared order fixes both
// the graded-lex term order and the printed variable order.
class Universe {
public:
    static std::shared_ptr<const Universe> make(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t idx) const { return names_.at(idx); }
    const std::vector<std::string>& names() const { return names_; }
    // Throws UnknownSymbol.
    std::size_t index(const std::string& name) const;
    std::optional<std::size_t> find(const std::string& name) const;
    bool same_as(const Universe& other) const { return names_ == other.names_; }

private:
    explicit Universe(std::vector<std::string> names);
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

// Exponent vector, indexed like the universe.
using Mono = std::vector<unsigned>;

unsigned mono_degree(const Mono& m);
bool mono_divides(const Mono& a, const Mono& b); // a | b componentwise
Mono mono_quotient(const Mono& b, const Mono& a); // b / a, requires divisibility
Mono mono_product(const Mono& a, const Mono& b);

// Graded lexicographic order: total degree first, then lexicographic in the
// declared symbol order. Printing walks terms in descending order, so the
// highest-degree term leads.
struct GradedLexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse multivariate polynomial with exact Gaussian-rational coefficients.
class Poly {
public:
    explicit Poly(UniversePtr universe);
    static Poly constant(UniversePtr universe, const Scalar& c);
    static Poly variable(UniversePtr universe, std::size_t idx);
    static Poly variable(UniversePtr universe, const std::string& name);

    const UniversePtr& universe() const { return universe_; }
    const std::map<Mono, Scalar, GradedLexLess>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Requires is_constant(); the zero polynomial yields 0.
    Scalar constant_value() const;
    std::size_t term_count() const { return terms_.size(); }
    unsigned total_degree() const; // 0 for the zero polynomial
    unsigned degree_in(std::size_t var) const;
    bool contains(std::size_t var) const { return degree_in(var) > 0; }

    // Leading data under graded-lex (throws on the zero polynomial).
    const Mono& leading_mono() const;
    const Scalar& leading_coeff() const;

    // Componentwise minimum exponent over all terms; the largest monomial
    // dividing every term. Requires a nonzero polynomial.
    Mono monomial_content() const;
    Poly divided_by_mono(const Mono& m) const;

    void add_term(const Mono& m, const Scalar& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly operator*(const Scalar& c) const;
    Poly pow(unsigned n) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Formal partial derivative, no constraint awareness.
    Poly derivative(std::size_t var) const;

    // Exact quotient in the free polynomial ring, or nullopt when the
    // divisor does not divide exactly.
    std::optional<Poly> divided_by(const Poly& divisor) const;

    // Replace variables by scalars (other variables untouched).
    Poly substitute_scalars(const std::map<std::size_t, Scalar>& values) const;

    Poly map_coefficients(const std::function<Scalar(const Scalar&)>& fn) const;

    std::string to_string() const;

private:
    void check_same_universe(const Poly& o) const;
    UniversePtr universe_;
    std::map<Mono, Scalar, GradedLexLess> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

// Greatest common divisor in the free polynomial ring, computed by the
// primitive Euclidean algorithm with pseudo-division. The result is monic in
// its graded-lex leading coefficient; gcd(0, p) = monic p; two nonzero
// constants have gcd 1 (coefficients form a field).
Poly poly_gcd(const Poly& a, const Poly& b);

} // namespace reeb
