#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "reeb/forms.hpp"
#include "reeb/polynomial.hpp"
#include "reeb/ratexpr.hpp"
#include "reeb/report.hpp"

namespace reeb::testing {

inline const CheckRecord* find_check(const VerificationReport& report, const std::string& id) {
    for (const auto& rec : report.checks()) {
        if (rec.id == id) return &rec;
    }
    return nullptr;
}

// Deterministic generator for property suites.  Every suite fixes its own
// seed so failures reproduce bit-for-bit across runs and machines.
class Rng {
public:
    explicit Rng(std::uint32_t seed) : engine_(seed) {}

    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> dist(lo, hi);
        return dist(engine_);
    }

    Scalar scalar(long bound = 5) {
        long den = integer(1, 3);
        return Scalar(integer(-bound, bound), den);
    }

    Scalar nonzero_scalar(long bound = 5) {
        Scalar s = scalar(bound);
        while (s.is_zero()) {
            s = scalar(bound);
        }
        return s;
    }

    std::size_t index(std::size_t count) {
        return static_cast<std::size_t>(integer(0, static_cast<long>(count) - 1));
    }

    // Sparse polynomial: `terms` monomials of total degree <= max_degree in
    // the given variables.  Sparsity keeps exact arithmetic cheap even after
    // constraint reduction blows up individual coefficients.
    Poly poly(const std::shared_ptr<const Universe>& universe,
              const std::vector<std::size_t>& vars,
              int terms = 2,
              int max_degree = 2) {
        Poly out{universe};
        for (int t = 0; t < terms; ++t) {
            Poly mono = Poly::constant(universe, nonzero_scalar());
            int degree = static_cast<int>(integer(0, max_degree));
            for (int d = 0; d < degree; ++d) {
                mono = mono * Poly::variable(universe, vars[index(vars.size())]);
            }
            out = out + mono;
        }
        return out;
    }

    RatExpr scalar_expr(const std::shared_ptr<const ConstraintContext>& ctx,
                        const std::vector<std::size_t>& vars,
                        int terms = 2,
                        int max_degree = 2) {
        return RatExpr::from_poly(poly(ctx->universe(), vars, terms, max_degree), ctx);
    }

private:
    std::mt19937 engine_;
};

// Strictly increasing index tuple of the requested length, drawn from [0, dim).
inline IdxTuple random_tuple(Rng& rng, std::size_t dim, std::size_t length) {
    IdxTuple out;
    std::size_t next = 0;
    while (out.size() < length) {
        std::size_t remaining = length - out.size();
        std::size_t slack = dim - next - remaining;
        next += rng.index(slack + 1);
        out.push_back(next);
        ++next;
    }
    return out;
}

}  // namespace reeb::testing
