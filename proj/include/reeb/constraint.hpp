#pragma once

#include "reeb/polynomial.hpp"

#include <memory>
#include <vector>

namespace reeb {

// Quadratic rewrite rule w^2 -> replacement. The replacement may be at most
// linear in w itself and must not mention the solved variable of any later
// rule, so the rule list is triangular.
struct ConstraintRule {
    std::size_t var;
    Poly replacement;
};

// A triangular family of quadric rules over one universe. The leading
// monomials w_i^2 are pairwise coprime, so reduction reaches the same
// normal form in any rule order; reduce() is therefore canonical.
class ConstraintContext {
public:
    // No rules: the free polynomial ring.
    static std::shared_ptr<const ConstraintContext> free_ring(UniversePtr universe);
    static std::shared_ptr<const ConstraintContext> make(UniversePtr universe,
                                                         std::vector<ConstraintRule> rules);

    const UniversePtr& universe() const { return universe_; }
    const std::vector<ConstraintRule>& rules() const { return rules_; }
    bool has_rules() const { return !rules_.empty(); }

    bool is_solved(std::size_t var) const;
    // Null when the variable has no rule.
    const Poly* rule_for(std::size_t var) const;

    Poly reduce(const Poly& p) const;
    // Same normal form computed with the rules applied in a caller-chosen
    // cyclic order; exposed so tests can exercise confluence directly.
    Poly reduce_with_order(const Poly& p, const std::vector<std::size_t>& order) const;

    bool same_as(const ConstraintContext& other) const;

private:
    ConstraintContext(UniversePtr universe, std::vector<ConstraintRule> rules);
    // Eliminate powers >= 2 of one solved variable.
    static Poly apply_rule(const Poly& p, const ConstraintRule& rule);

    UniversePtr universe_;
    std::vector<ConstraintRule> rules_;
};

using ContextPtr = std::shared_ptr<const ConstraintContext>;

void check_same_context(const ContextPtr& a, const ContextPtr& b);

} // namespace reeb
