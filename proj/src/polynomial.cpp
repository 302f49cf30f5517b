#include "reeb/polynomial.hpp"

#include "reeb/errors.hpp"

#include <algorithm>
#include <ostream>

namespace reeb {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        auto [it, fresh] = index_.emplace(names_[i], i);
        if (!fresh) throw Error("duplicate symbol: " + names_[i]);
    }
}

std::shared_ptr<const Universe> Universe::make(std::vector<std::string> names) {
    return std::shared_ptr<const Universe>(new Universe(std::move(names)));
}

std::size_t Universe::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownSymbol(name);
    return it->second;
}

std::optional<std::size_t> Universe::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_quotient(const Mono& b, const Mono& a) {
    Mono out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] - a[i];
    return out;
}

Mono mono_product(const Mono& a, const Mono& b) {
    Mono out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

bool GradedLexLess::operator()(const Mono& a, const Mono& b) const {
    unsigned da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    // Lex: earlier symbols weigh more; a higher exponent on an earlier
    // symbol makes the monomial larger.
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

Poly::Poly(UniversePtr universe) : universe_(std::move(universe)) {
    if (!universe_) throw Error("polynomial needs a universe");
}

Poly Poly::constant(UniversePtr universe, const Scalar& c) {
    Poly p(std::move(universe));
    if (!c.is_zero()) p.terms_.emplace(Mono(p.universe_->size(), 0), c);
    return p;
}

Poly Poly::variable(UniversePtr universe, std::size_t idx) {
    Poly p(std::move(universe));
    if (idx >= p.universe_->size()) throw UnknownSymbol("#" + std::to_string(idx));
    Mono m(p.universe_->size(), 0);
    m[idx] = 1;
    p.terms_.emplace(std::move(m), Scalar(1));
    return p;
}

Poly Poly::variable(UniversePtr universe, const std::string& name) {
    std::size_t idx = universe->index(name);
    return variable(std::move(universe), idx);
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
}

Scalar Poly::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw Error("not a constant polynomial: " + to_string());
    return terms_.begin()->second;
}

unsigned Poly::total_degree() const {
    if (terms_.empty()) return 0;
    return mono_degree(terms_.rbegin()->first);
}

unsigned Poly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

const Mono& Poly::leading_mono() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.rbegin()->first;
}

const Scalar& Poly::leading_coeff() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.rbegin()->second;
}

Mono Poly::monomial_content() const {
    if (terms_.empty()) throw Error("zero polynomial has no monomial content");
    Mono out = terms_.begin()->first;
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], m[i]);
    return out;
}

Poly Poly::divided_by_mono(const Mono& m) const {
    Poly out(universe_);
    for (const auto& [mono, c] : terms_) {
        if (!mono_divides(m, mono)) throw Error("monomial does not divide term");
        out.terms_.emplace(mono_quotient(mono, m), c);
    }
    return out;
}

void Poly::add_term(const Mono& m, const Scalar& c) {
    if (m.size() != universe_->size()) throw Error("exponent vector has wrong length");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out(universe_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_universe(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_universe(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_universe(b);
    Poly out(a.universe_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(mono_product(ma, mb), ca * cb);
    return out;
}

Poly Poly::operator*(const Scalar& c) const {
    Poly out(universe_);
    if (c.is_zero()) return out;
    for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
    return out;
}

Poly Poly::pow(unsigned n) const {
    Poly out = Poly::constant(universe_, Scalar(1));
    Poly base = *this;
    while (n > 0) {
        if (n & 1u) out = out * base;
        n >>= 1u;
        if (n > 0) base = base * base;
    }
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    a.check_same_universe(b);
    return a.terms_ == b.terms_;
}

Poly Poly::derivative(std::size_t var) const {
    Poly out(universe_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Mono d = m;
        d[var] -= 1;
        out.add_term(d, c * Scalar(static_cast<long>(m[var])));
    }
    return out;
}

std::optional<Poly> Poly::divided_by(const Poly& divisor) const {
    check_same_universe(divisor);
    if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly rem = *this;
    Poly quot(universe_);
    // Greedy leading-term division. When the dividend is an exact multiple
    // the leading term stays divisible at every step, so termination with a
    // zero remainder is a complete test for exact divisibility.
    const Mono& dm = divisor.leading_mono();
    const Scalar& dc = divisor.leading_coeff();
    while (!rem.is_zero()) {
        const Mono& rm = rem.leading_mono();
        if (!mono_divides(dm, rm)) return std::nullopt;
        Mono qm = mono_quotient(rm, dm);
        Scalar qc = rem.leading_coeff() / dc;
        Poly t(universe_);
        t.terms_.emplace(std::move(qm), qc);
        quot += t;
        rem -= t * divisor;
    }
    return quot;
}

Poly Poly::substitute_scalars(const std::map<std::size_t, Scalar>& values) const {
    Poly out(universe_);
    for (const auto& [m, c] : terms_) {
        Scalar coeff = c;
        Mono rest = m;
        for (const auto& [var, val] : values) {
            for (unsigned k = 0; k < m[var]; ++k) coeff *= val;
            rest[var] = 0;
        }
        out.add_term(rest, coeff);
    }
    return out;
}

Poly Poly::map_coefficients(const std::function<Scalar(const Scalar&)>& fn) const {
    Poly out(universe_);
    for (const auto& [m, c] : terms_) out.add_term(m, fn(c));
    return out;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool negative = c.has_sign_out_front();
        Scalar mag = negative ? -c : c;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string vars;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += universe_->name(i);
            if (m[i] > 1) vars += "^" + std::to_string(m[i]);
        }
        if (vars.empty()) {
            out += mag.to_term_string();
        } else if (mag.is_one()) {
            out += vars;
        } else {
            out += mag.to_term_string() + "*" + vars;
        }
    }
    return out;
}

void Poly::check_same_universe(const Poly& o) const {
    if (universe_ == o.universe_) return;
    if (!universe_->same_as(*o.universe_))
        throw ContextMismatch("polynomials over different universes");
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
    return os << p.to_string();
}

namespace {

// Coefficient of var^k, as a polynomial with var's exponent zeroed.
Poly coeff_in(const Poly& p, std::size_t var, unsigned k) {
    Poly out(p.universe());
    for (const auto& [m, c] : p.terms()) {
        if (m[var] != k) continue;
        Mono reduced = m;
        reduced[var] = 0;
        out.add_term(reduced, c);
    }
    return out;
}

Poly times_var_power(const Poly& p, std::size_t var, unsigned k) {
    if (k == 0) return p;
    Poly out(p.universe());
    for (const auto& [m, c] : p.terms()) {
        Mono shifted = m;
        shifted[var] += k;
        out.add_term(shifted, c);
    }
    return out;
}

Poly monic(Poly p) {
    if (p.is_zero()) return p;
    const Scalar lc = p.leading_coeff();
    if (lc.is_one()) return p;
    return p * (Scalar(1) / lc);
}

// gcd of all var^k coefficients of p; the content of p viewed in R[var].
Poly content_in(const Poly& p, std::size_t var) {
    Poly g(p.universe());
    for (unsigned k = 0; k <= p.degree_in(var); ++k) {
        Poly c = coeff_in(p, var, k);
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Poly primitive_in(const Poly& p, std::size_t var) {
    if (p.is_zero()) return p;
    auto q = p.divided_by(content_in(p, var));
    if (!q) throw Error("content does not divide its polynomial");
    return std::move(*q);
}

// Pseudo-remainder of f by g in var: repeatedly scale f by g's leading
// var-coefficient and cancel the top var-term. The extra content this
// introduces is stripped by the caller.
Poly pseudo_rem(Poly f, const Poly& g, std::size_t var) {
    const unsigned dg = g.degree_in(var);
    const Poly lc_g = coeff_in(g, var, dg);
    while (!f.is_zero() && f.degree_in(var) >= dg) {
        const unsigned df = f.degree_in(var);
        const Poly lc_f = coeff_in(f, var, df);
        f = f * lc_g - times_var_power(lc_f, var, df - dg) * g;
    }
    return f;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    // Main variable: the highest symbol either argument mentions.
    std::size_t var = a.universe()->size();
    for (std::size_t i = a.universe()->size(); i-- > 0;) {
        if (a.contains(i) || b.contains(i)) {
            var = i;
            break;
        }
    }
    if (var == a.universe()->size()) return Poly::constant(a.universe(), Scalar(1));
    if (!a.contains(var)) return poly_gcd(a, content_in(b, var));
    if (!b.contains(var)) return poly_gcd(content_in(a, var), b);

    const Poly cont = poly_gcd(content_in(a, var), content_in(b, var));
    Poly f = primitive_in(a, var);
    Poly g = primitive_in(b, var);
    if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
    while (!g.is_zero()) {
        Poly r = pseudo_rem(f, g, var);
        f = std::move(g);
        g = r.is_zero() ? std::move(r) : primitive_in(r, var);
    }
    return monic(cont * primitive_in(f, var));
}

} // namespace reeb
