#include "reeb/ratexpr.hpp"

#include "reeb/errors.hpp"

#include <ostream>

namespace reeb {

namespace {

constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);

RatExpr intrinsic_poly_derivative(const Poly& p, std::size_t var, const ContextPtr& ctx,
                                  std::size_t skip = kNoSkip);

// dw/du in the presence of the rule w^2 = R: differentiate implicitly,
//   2 w dw = (dR/dw) dw + D_u(R)|_{w fixed} du  =>
//   dw/du = D_u(R)|_{w fixed} / (2w - dR/dw).
// R may contain w linearly; that dependence lives in the denominator, so the
// numerator must differentiate R with the explicit w occurrences held fixed.
RatExpr implicit_derivative(const ContextPtr& ctx, std::size_t w, std::size_t u) {
    if (w == u) return RatExpr::constant(ctx, Scalar(1));
    const Poly* rule = ctx->rule_for(w);
    if (!rule) return RatExpr(ctx);
    RatExpr numerator = intrinsic_poly_derivative(*rule, u, ctx, w);
    Poly denom = Poly::variable(ctx->universe(), w) * Scalar(2) - rule->derivative(w);
    return numerator / RatExpr::from_poly(denom, ctx);
}

RatExpr intrinsic_poly_derivative(const Poly& p, std::size_t var, const ContextPtr& ctx,
                                  std::size_t skip) {
    RatExpr out = RatExpr::from_poly(p.derivative(var), ctx);
    for (const auto& rule : ctx->rules()) {
        if (rule.var == var || rule.var == skip) continue;
        if (!p.contains(rule.var)) continue;
        out += RatExpr::from_poly(p.derivative(rule.var), ctx) *
               implicit_derivative(ctx, rule.var, var);
    }
    return out;
}

bool den_needs_parens(const Poly& den) {
    if (den.term_count() > 1) return true;
    const auto& [m, c] = *den.terms().begin();
    if (!c.is_one()) return true;
    int vars = 0;
    for (unsigned e : m)
        if (e > 0) ++vars;
    return vars > 1;
}

} // namespace

RatExpr::RatExpr(ContextPtr ctx)
    : ctx_(std::move(ctx)),
      num_(ctx_ ? Poly(ctx_->universe()) : throw Error("expression needs a context")),
      den_(Poly::constant(ctx_->universe(), Scalar(1))) {}

RatExpr::RatExpr(Poly num, Poly den, ContextPtr ctx, bool already_reduced)
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
    if (!ctx_) throw Error("expression needs a context");
    if (!num_.universe()->same_as(*ctx_->universe()) ||
        !den_.universe()->same_as(*ctx_->universe()))
        throw ContextMismatch("fraction parts over a different universe");
    normalize(already_reduced);
}

RatExpr RatExpr::constant(ContextPtr ctx, const Scalar& c) {
    Poly num = Poly::constant(ctx->universe(), c);
    Poly den = Poly::constant(ctx->universe(), Scalar(1));
    return RatExpr(std::move(num), std::move(den), std::move(ctx), true);
}

RatExpr RatExpr::variable(ContextPtr ctx, std::size_t idx) {
    Poly num = Poly::variable(ctx->universe(), idx);
    Poly den = Poly::constant(ctx->universe(), Scalar(1));
    return RatExpr(std::move(num), std::move(den), std::move(ctx), true);
}

RatExpr RatExpr::variable(ContextPtr ctx, const std::string& name) {
    std::size_t idx = ctx->universe()->index(name);
    return variable(std::move(ctx), idx);
}

RatExpr RatExpr::from_poly(Poly p, ContextPtr ctx) {
    Poly den = Poly::constant(ctx->universe(), Scalar(1));
    return RatExpr(std::move(p), std::move(den), std::move(ctx), false);
}

RatExpr RatExpr::fraction(Poly num, Poly den, ContextPtr ctx) {
    return RatExpr(std::move(num), std::move(den), std::move(ctx), false);
}

void RatExpr::normalize(bool already_reduced) {
    if (!already_reduced) {
        num_ = ctx_->reduce(num_);
        den_ = ctx_->reduce(den_);
    }
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(ctx_->universe(), Scalar(1));
        return;
    }
    // Rationalize: for each rule w^2 = beta + alpha*w the denominator splits
    // as A + B*w (degree <= 1 after reduction) and its conjugate
    // (A + B*alpha) - B*w multiplies it into the w-free norm
    // A^2 + alpha*A*B - beta*B^2, nonzero in the quotient domain.  This keeps
    // denominators free of solved variables, which makes the cancellation
    // below effective and the printed form canonical.
    bool again = true;
    for (std::size_t pass = 0; again && pass <= ctx_->rules().size(); ++pass) {
        again = false;
        for (const auto& rule : ctx_->rules()) {
            if (!den_.contains(rule.var)) continue;
            const Poly w = Poly::variable(ctx_->universe(), ctx_->universe()->name(rule.var));
            const Poly b = den_.derivative(rule.var);
            const Poly a = den_ - b * w;
            const Poly alpha = rule.replacement.derivative(rule.var);
            const Poly conj = a + b * alpha - b * w;
            num_ = ctx_->reduce(num_ * conj);
            den_ = ctx_->reduce(den_ * conj);
            again = true;
        }
    }
    // Cancel the common monomial factor; every variable is nonzero in the
    // quotient domain, so this is exact.
    Mono mn = num_.monomial_content();
    Mono md = den_.monomial_content();
    Mono common(mn.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < mn.size(); ++i) {
        common[i] = std::min(mn[i], md[i]);
        any = any || common[i] > 0;
    }
    if (any) {
        num_ = num_.divided_by_mono(common);
        den_ = den_.divided_by_mono(common);
    }
    if (auto q = num_.divided_by(den_)) {
        num_ = std::move(*q);
        den_ = Poly::constant(ctx_->universe(), Scalar(1));
    } else if (auto r = den_.divided_by(num_)) {
        den_ = std::move(*r);
        num_ = Poly::constant(ctx_->universe(), Scalar(1));
    }
    Scalar lc = den_.leading_coeff();
    if (!lc.is_one()) {
        Scalar inv = Scalar(1) / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

Scalar RatExpr::constant_value() const {
    if (!is_constant()) throw Error("not a constant expression: " + to_string());
    return num_.constant_value() / den_.constant_value();
}

unsigned RatExpr::complexity() const {
    return num_.total_degree() + den_.total_degree();
}

RatExpr RatExpr::operator-() const {
    RatExpr out = *this;
    out.num_ = -out.num_;
    return out;
}

RatExpr& RatExpr::operator+=(const RatExpr& o) {
    check_same_context(ctx_, o.ctx_);
    if (den_ == o.den_) {
        *this = RatExpr(num_ + o.num_, den_, ctx_, false);
    } else if (auto q = den_.divided_by(o.den_)) {
        *this = RatExpr(num_ + o.num_ * *q, den_, ctx_, false);
    } else if (auto r = o.den_.divided_by(den_)) {
        *this = RatExpr(num_ * *r + o.num_, o.den_, ctx_, false);
    } else {
        *this = RatExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_, ctx_, false);
    }
    return *this;
}

RatExpr& RatExpr::operator-=(const RatExpr& o) {
    return *this += -o;
}

RatExpr& RatExpr::operator*=(const RatExpr& o) {
    check_same_context(ctx_, o.ctx_);
    Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
    // Cross-cancel exact quotients first so (f/g)*(g/h) never expands.
    if (!n1.is_zero()) {
        if (auto q = n1.divided_by(d2)) {
            n1 = std::move(*q);
            d2 = Poly::constant(ctx_->universe(), Scalar(1));
        }
    }
    if (!n2.is_zero()) {
        if (auto q = n2.divided_by(d1)) {
            n2 = std::move(*q);
            d1 = Poly::constant(ctx_->universe(), Scalar(1));
        }
    }
    *this = RatExpr(n1 * n2, d1 * d2, ctx_, false);
    return *this;
}

RatExpr& RatExpr::operator/=(const RatExpr& o) {
    if (o.num_.is_zero()) throw DivisionByZero("division by zero expression");
    RatExpr inv(o.den_, o.num_, o.ctx_, true);
    return *this *= inv;
}

RatExpr RatExpr::operator*(const Scalar& c) const {
    if (c.is_zero()) return RatExpr(ctx_);
    RatExpr out = *this;
    out.num_ = out.num_ * c;
    return out;
}

RatExpr RatExpr::pow(int n) const {
    if (n < 0) {
        RatExpr inv = RatExpr::constant(ctx_, Scalar(1)) / *this;
        return inv.pow(-n);
    }
    RatExpr out = RatExpr::constant(ctx_, Scalar(1));
    RatExpr base = *this;
    unsigned k = static_cast<unsigned>(n);
    while (k > 0) {
        if (k & 1u) out *= base;
        k >>= 1u;
        if (k > 0) base *= base;
    }
    return out;
}

bool RatExpr::equal_mod(const RatExpr& other) const {
    check_same_context(ctx_, other.ctx_);
    Poly diff = num_ * other.den_ - other.num_ * den_;
    return ctx_->reduce(diff).is_zero();
}

RatExpr RatExpr::partial_derivative(std::size_t var) const {
    if (var >= universe()->size()) throw UnknownSymbol("#" + std::to_string(var));
    if (ctx_->is_solved(var))
        throw Error("derivative with respect to solved variable " + universe()->name(var));
    RatExpr dnum = intrinsic_poly_derivative(num_, var, ctx_);
    if (den_.is_constant()) {
        Scalar d = den_.constant_value();
        return dnum * (Scalar(1) / d);
    }
    RatExpr dden = intrinsic_poly_derivative(den_, var, ctx_);
    RatExpr n = RatExpr::from_poly(num_, ctx_);
    RatExpr d = RatExpr::from_poly(den_, ctx_);
    return (dnum * d - n * dden) / (d * d);
}

RatExpr RatExpr::partial_derivative(const std::string& name) const {
    return partial_derivative(universe()->index(name));
}

RatExpr RatExpr::coordinate_derivative(const ContextPtr& ctx, std::size_t w, std::size_t u) {
    return implicit_derivative(ctx, w, u);
}

bool RatExpr::free_of(std::size_t var) const {
    return !num_.contains(var) && !den_.contains(var);
}

RatExpr RatExpr::substitute(const std::map<std::size_t, RatExpr>& map,
                            const ContextPtr& target) const {
    auto subst_for = [&](std::size_t var) -> RatExpr {
        auto it = map.find(var);
        if (it != map.end()) {
            check_same_context(it->second.context(), target);
            return it->second;
        }
        return RatExpr::variable(target, universe()->name(var));
    };
    auto eval = [&](const Poly& p) -> RatExpr {
        RatExpr out(target);
        for (const auto& [m, c] : p.terms()) {
            RatExpr term = RatExpr::constant(target, c);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0) term *= subst_for(i).pow(static_cast<int>(m[i]));
            out += term;
        }
        return out;
    };
    RatExpr dn = eval(den_);
    if (dn.is_zero()) throw DivisionByZero("substitution sends denominator to zero");
    return eval(num_) / dn;
}

RatExpr RatExpr::substitute_scalars(const std::map<std::size_t, Scalar>& values) const {
    ContextPtr specialized = specialize_context(ctx_, values);
    Poly n = num_.substitute_scalars(values);
    Poly d = den_.substitute_scalars(values);
    return RatExpr::fraction(std::move(n), std::move(d), specialized);
}

RatExpr RatExpr::canonical() const {
    // Polynomial gcd cancellation is too slow for the arithmetic fast path,
    // so it runs only here, on demand, for printing and final comparisons.
    // The exact divisions double as a correctness check: a wrong gcd is
    // simply ignored.
    if (den_.term_count() <= 1 || num_.term_count() + den_.term_count() > 512) return *this;
    Poly g = poly_gcd(num_, den_);
    if (g.is_constant()) return *this;
    auto qn = num_.divided_by(g);
    auto qd = den_.divided_by(g);
    if (!qn || !qd) return *this;
    return RatExpr::fraction(std::move(*qn), std::move(*qd), ctx_);
}

std::string RatExpr::to_string() const {
    if (den_.term_count() > 1) {
        RatExpr c = canonical();
        if (c.den_.term_count() < den_.term_count()) return c.to_string();
    }
    if (is_polynomial()) {
        Scalar d = den_.constant_value();
        if (d.is_one()) return num_.to_string();
        // Denominator is normalized monic, so a constant one is exactly 1.
    }
    std::string n = num_.term_count() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
    std::string d = den_needs_parens(den_) ? "(" + den_.to_string() + ")" : den_.to_string();
    return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const RatExpr& e) {
    return os << e.to_string();
}

ContextPtr specialize_context(const ContextPtr& ctx,
                              const std::map<std::size_t, Scalar>& values) {
    for (const auto& [var, val] : values)
        if (ctx->is_solved(var))
            throw Error("cannot specialize a solved variable: " +
                        ctx->universe()->name(var));
    if (!ctx->has_rules()) return ctx;
    std::vector<ConstraintRule> rules;
    rules.reserve(ctx->rules().size());
    for (const auto& r : ctx->rules())
        rules.push_back({r.var, r.replacement.substitute_scalars(values)});
    return ConstraintContext::make(ctx->universe(), std::move(rules));
}

} // namespace reeb
