#include "reeb/linsolve.hpp"

#include "reeb/errors.hpp"

#include <algorithm>

namespace reeb {

namespace {

unsigned long pivot_weight(const RatExpr& e) {
    return 1000ul * e.complexity() + e.num().term_count() + e.den().term_count();
}

} // namespace

LinearSolveResult linear_solve(std::vector<std::vector<RatExpr>> a, std::vector<RatExpr> b) {
    const std::size_t rows = a.size();
    if (b.size() != rows) throw Error("right-hand side length mismatch");
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != cols) throw Error("ragged coefficient matrix");
    if (rows == 0) return {LinearSolveResult::Status::unique, {}, {}};
    ContextPtr ctx = b[0].context();

    std::vector<bool> row_used(rows, false);
    // pivot_col[k] is the column eliminated at step k; pivot_row[k] its row.
    std::vector<std::size_t> pivot_row, pivot_col;
    std::vector<bool> col_pivoted(cols, false);

    for (;;) {
        // Choose the lightest nonzero entry among unused rows and columns.
        bool found = false;
        std::size_t br = 0, bc = 0;
        unsigned long best = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            if (row_used[r]) continue;
            for (std::size_t c = 0; c < cols; ++c) {
                if (col_pivoted[c] || a[r][c].is_zero()) continue;
                unsigned long w = pivot_weight(a[r][c]);
                if (!found || w < best) {
                    found = true;
                    best = w;
                    br = r;
                    bc = c;
                }
            }
        }
        if (!found) break;
        row_used[br] = true;
        col_pivoted[bc] = true;
        pivot_row.push_back(br);
        pivot_col.push_back(bc);
        const RatExpr piv = a[br][bc];
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == br || a[r][bc].is_zero()) continue;
            RatExpr factor = a[r][bc] / piv;
            for (std::size_t c = 0; c < cols; ++c) {
                if (a[br][c].is_zero()) continue;
                a[r][c] -= factor * a[br][c];
            }
            b[r] -= factor * b[br];
        }
    }

    for (std::size_t r = 0; r < rows; ++r) {
        if (row_used[r]) continue;
        if (!b[r].is_zero())
            return {LinearSolveResult::Status::inconsistent, {}, {}};
    }

    LinearSolveResult out;
    out.particular.assign(cols, RatExpr(ctx));
    for (std::size_t k = 0; k < pivot_row.size(); ++k)
        out.particular[pivot_col[k]] = b[pivot_row[k]] / a[pivot_row[k]][pivot_col[k]];

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!col_pivoted[c]) free_cols.push_back(c);

    for (std::size_t f : free_cols) {
        std::vector<RatExpr> basis(cols, RatExpr(ctx));
        basis[f] = RatExpr::constant(ctx, Scalar(1));
        for (std::size_t k = 0; k < pivot_row.size(); ++k) {
            // Row is a[pr][pc]*x_pc + sum over free a[pr][f]*x_f = b: with
            // x_f = 1 the homogeneous part gives x_pc = -a[pr][f]/a[pr][pc].
            std::size_t pr = pivot_row[k], pc = pivot_col[k];
            if (!a[pr][f].is_zero()) basis[pc] = -(a[pr][f] / a[pr][pc]);
        }
        out.kernel.push_back(std::move(basis));
    }

    out.status = free_cols.empty() ? LinearSolveResult::Status::unique
                                   : LinearSolveResult::Status::underdetermined;
    return out;
}

} // namespace reeb
