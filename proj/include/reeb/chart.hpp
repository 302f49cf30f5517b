#pragma once

#include "reeb/ratexpr.hpp"

#include <memory>
#include <string>
#include <vector>

namespace reeb {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

// Coordinate chart over a universe. Coordinates are the symbols forms and
// fields may differentiate along; the remaining universe symbols are
// parameters. A coordinate can be declared solved, meaning the context
// carries a quadric rule expressing it implicitly in the others; the basis
// directions of the chart are the free (unsolved) coordinates.
class Chart {
public:
    static ChartPtr make(std::string name,
                         ContextPtr ctx,
                         std::vector<std::string> coordinates,
                         std::vector<std::string> solved = {});

    const std::string& name() const { return name_; }
    const ContextPtr& context() const { return ctx_; }
    const UniversePtr& universe() const { return ctx_->universe(); }

    // Universe indices, in declaration order.
    const std::vector<std::size_t>& coordinates() const { return coordinates_; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const std::vector<std::size_t>& solved() const { return solved_; }

    std::size_t dim() const { return basis_.size(); }
    bool is_cut_out() const { return !solved_.empty(); }

    // Position of a universe index within basis(); throws UnknownSymbol.
    std::size_t basis_position(std::size_t universe_idx) const;
    const std::string& basis_name(std::size_t pos) const;

    RatExpr coordinate_expr(const std::string& name) const;
    RatExpr scalar(const std::string& text) const; // parse over this chart's context

    bool same_as(const Chart& other) const;

private:
    Chart(std::string name, ContextPtr ctx, std::vector<std::size_t> coordinates,
          std::vector<std::size_t> solved);

    std::string name_;
    ContextPtr ctx_;
    std::vector<std::size_t> coordinates_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> solved_;
};

void check_same_chart(const ChartPtr& a, const ChartPtr& b);

// Map between charts given by target-coordinate expressions over the source
// chart. Components must satisfy the target context's rules modulo the
// source context; parameters without an explicit component map by name.
class SmoothMap {
public:
    SmoothMap(ChartPtr source, ChartPtr target,
              std::map<std::string, RatExpr> components);

    const ChartPtr& source() const { return source_; }
    const ChartPtr& target() const { return target_; }

    // Component for a target universe index (explicit or name-matched).
    const RatExpr& component(std::size_t target_idx) const;
    // Composition with a scalar on the target: substitution.
    RatExpr pull_scalar(const RatExpr& target_scalar) const;

private:
    ChartPtr source_, target_;
    std::map<std::size_t, RatExpr> components_;
};

} // namespace reeb
