#include "reeb/chart.hpp"

#include "reeb/errors.hpp"
#include "reeb/parse.hpp"

#include <algorithm>

namespace reeb {

Chart::Chart(std::string name, ContextPtr ctx, std::vector<std::size_t> coordinates,
             std::vector<std::size_t> solved)
    : name_(std::move(name)),
      ctx_(std::move(ctx)),
      coordinates_(std::move(coordinates)),
      solved_(std::move(solved)) {
    for (std::size_t s : solved_) {
        if (std::find(coordinates_.begin(), coordinates_.end(), s) == coordinates_.end())
            throw Error("solved variable is not a coordinate: " + universe()->name(s));
        if (!ctx_->is_solved(s))
            throw Error("no rule for solved coordinate: " + universe()->name(s));
    }
    // A coordinate carrying a rule must be declared solved, otherwise basis
    // directions would not be independent.
    for (std::size_t c : coordinates_) {
        bool declared = std::find(solved_.begin(), solved_.end(), c) != solved_.end();
        if (ctx_->is_solved(c) && !declared)
            throw Error("coordinate has a rule but is not declared solved: " +
                        universe()->name(c));
        if (!declared) basis_.push_back(c);
    }
}

ChartPtr Chart::make(std::string name, ContextPtr ctx,
                     std::vector<std::string> coordinates,
                     std::vector<std::string> solved) {
    std::vector<std::size_t> coord_idx, solved_idx;
    for (const auto& n : coordinates) coord_idx.push_back(ctx->universe()->index(n));
    for (const auto& n : solved) solved_idx.push_back(ctx->universe()->index(n));
    return ChartPtr(new Chart(std::move(name), std::move(ctx), std::move(coord_idx),
                              std::move(solved_idx)));
}

std::size_t Chart::basis_position(std::size_t universe_idx) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] == universe_idx) return i;
    throw UnknownSymbol(universe()->name(universe_idx) + " (not a basis direction)");
}

const std::string& Chart::basis_name(std::size_t pos) const {
    return universe()->name(basis_.at(pos));
}

RatExpr Chart::coordinate_expr(const std::string& name) const {
    return RatExpr::variable(ctx_, name);
}

RatExpr Chart::scalar(const std::string& text) const {
    return parse_scalar(text, ctx_);
}

bool Chart::same_as(const Chart& other) const {
    return name_ == other.name_ && ctx_->same_as(*other.ctx_) &&
           coordinates_ == other.coordinates_ && solved_ == other.solved_;
}

void check_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return;
    if (!a || !b) throw ChartMismatch("missing chart");
    if (!a->same_as(*b)) throw ChartMismatch("operands live on different charts");
}

SmoothMap::SmoothMap(ChartPtr source, ChartPtr target,
                     std::map<std::string, RatExpr> components)
    : source_(std::move(source)), target_(std::move(target)) {
    for (auto& [name, expr] : components) {
        std::size_t idx = target_->universe()->index(name);
        check_same_context(expr.context(), source_->context());
        components_.emplace(idx, std::move(expr));
    }
    for (std::size_t c : target_->coordinates())
        if (!components_.count(c))
            throw Error("map misses a component for coordinate " +
                        target_->universe()->name(c));
    // The image must satisfy the target's rules.
    for (const auto& rule : target_->context()->rules()) {
        RatExpr lhs = component(rule.var).pow(2);
        RatExpr rhs = pull_scalar(RatExpr::from_poly(rule.replacement, target_->context()));
        if (!lhs.equal_mod(rhs))
            throw Error("map components violate the rule for " +
                        target_->universe()->name(rule.var));
    }
}

const RatExpr& SmoothMap::component(std::size_t target_idx) const {
    auto it = components_.find(target_idx);
    if (it != components_.end()) return it->second;
    throw UnknownSymbol(target_->universe()->name(target_idx) + " (no map component)");
}

RatExpr SmoothMap::pull_scalar(const RatExpr& target_scalar) const {
    check_same_context(target_scalar.context(), target_->context());
    return target_scalar.substitute(components_, source_->context());
}

} // namespace reeb

