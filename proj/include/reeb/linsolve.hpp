#pragma once

#include "reeb/ratexpr.hpp"

#include <vector>

namespace reeb {

// Outcome of exact Gaussian elimination over the fraction field. A failed
// solve is data, not an exception: callers decide whether an
// underdetermined or inconsistent system is an error.
struct LinearSolveResult {
    enum class Status { unique, underdetermined, inconsistent };
    Status status;
    // One solution (empty when inconsistent).
    std::vector<RatExpr> particular;
    // Basis of the homogeneous solution space (empty when unique).
    std::vector<std::vector<RatExpr>> kernel;

    bool solvable() const { return status != Status::inconsistent; }
};

// Solve A x = b exactly. Pivots minimize expression degree (then term
// count, then position) to limit growth; elimination is deterministic.
LinearSolveResult linear_solve(std::vector<std::vector<RatExpr>> a, std::vector<RatExpr> b);

} // namespace reeb
