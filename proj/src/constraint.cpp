#include "reeb/constraint.hpp"

#include "reeb/errors.hpp"

namespace reeb {

ConstraintContext::ConstraintContext(UniversePtr universe, std::vector<ConstraintRule> rules)
    : universe_(std::move(universe)), rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& r = rules_[i];
        if (r.var >= universe_->size()) throw UnknownSymbol("#" + std::to_string(r.var));
        if (!r.replacement.universe()->same_as(*universe_))
            throw ContextMismatch("rule replacement over a different universe");
        if (r.replacement.degree_in(r.var) > 1)
            throw Error("rule replacement must be at most linear in its own variable");
        for (std::size_t j = i + 1; j < rules_.size(); ++j) {
            if (rules_[j].var == r.var) throw Error("duplicate rule for one variable");
            if (r.replacement.contains(rules_[j].var))
                throw Error("rule replacement mentions a later solved variable");
        }
    }
}

std::shared_ptr<const ConstraintContext> ConstraintContext::free_ring(UniversePtr universe) {
    return std::shared_ptr<const ConstraintContext>(
        new ConstraintContext(std::move(universe), {}));
}

std::shared_ptr<const ConstraintContext> ConstraintContext::make(
    UniversePtr universe, std::vector<ConstraintRule> rules) {
    return std::shared_ptr<const ConstraintContext>(
        new ConstraintContext(std::move(universe), std::move(rules)));
}

bool ConstraintContext::is_solved(std::size_t var) const {
    return rule_for(var) != nullptr;
}

const Poly* ConstraintContext::rule_for(std::size_t var) const {
    for (const auto& r : rules_)
        if (r.var == var) return &r.replacement;
    return nullptr;
}

Poly ConstraintContext::apply_rule(const Poly& p, const ConstraintRule& rule) {
    if (p.degree_in(rule.var) <= 1) return p;
    Poly out(p.universe());
    Poly pending(p.universe());
    for (const auto& [m, c] : p.terms()) {
        if (m[rule.var] <= 1) {
            out.add_term(m, c);
        } else {
            Mono rest = m;
            rest[rule.var] -= 2;
            Poly t(p.universe());
            t.add_term(rest, c);
            pending += t * rule.replacement;
        }
    }
    if (pending.is_zero()) return out;
    return out + apply_rule(pending, rule);
}

Poly ConstraintContext::reduce(const Poly& p) const {
    if (rules_.empty()) return p;
    Poly cur = p;
    // One pass in triangular order suffices for rule lists whose
    // replacements only mention earlier-or-own variables, but iterate to a
    // fixed point anyway; confluence makes the result order-independent.
    for (;;) {
        Poly next = cur;
        for (const auto& r : rules_) next = apply_rule(next, r);
        if (next == cur) return next;
        cur = next;
    }
}

Poly ConstraintContext::reduce_with_order(const Poly& p,
                                          const std::vector<std::size_t>& order) const {
    Poly cur = p;
    for (;;) {
        Poly next = cur;
        for (std::size_t idx : order) next = apply_rule(next, rules_.at(idx));
        if (next == cur) return next;
        cur = next;
    }
}

bool ConstraintContext::same_as(const ConstraintContext& other) const {
    if (!universe_->same_as(*other.universe_)) return false;
    if (rules_.size() != other.rules_.size()) return false;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (rules_[i].var != other.rules_[i].var) return false;
        if (!(rules_[i].replacement == other.rules_[i].replacement)) return false;
    }
    return true;
}

void check_same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return;
    if (!a || !b) throw ContextMismatch("missing constraint context");
    if (!a->same_as(*b)) throw ContextMismatch("operands carry different constraint contexts");
}

} // namespace reeb
