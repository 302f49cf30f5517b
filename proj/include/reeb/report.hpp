#pragma once

#include "reeb/forms.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace reeb {

enum class CheckStatus { pass, pass_mod_constraint, fail, measured };

std::string to_string(CheckStatus s);
CheckStatus status_from_string(const std::string& text);

// One verified identity. `ref` is a human-readable statement of what was
// checked; `residual` is the reduced defect when the check failed;
// `measured` carries an observed constant for checks that record an
// outcome instead of adjudicating one.
struct CheckRecord {
    std::string id;
    std::string ref;
    CheckStatus status = CheckStatus::pass;
    std::string residual;
    std::string measured;
    long long ms = 0;
};

class VerificationReport {
public:
    explicit VerificationReport(std::string suite) : suite_(std::move(suite)) {}

    const std::string& suite() const { return suite_; }
    const std::vector<CheckRecord>& checks() const { return checks_; }

    // Appends a record; check ids must be unique within a report.
    void add(CheckRecord rec);
    void merge(const VerificationReport& other);

    bool all_passed() const;
    int exit_code() const { return all_passed() ? 0 : 1; }
    std::size_t fail_count() const;

    std::string to_text() const;
    std::string to_json() const;
    static VerificationReport from_json(const std::string& text);

private:
    std::string suite_;
    std::vector<CheckRecord> checks_;
};

// Classification of an equality claim a = b over a constrained context:
// `pass` when the cross-multiplied difference vanishes before any
// constraint rule fires, `pass_mod_constraint` when it vanishes only after
// reduction, `fail` otherwise (with the reduced defect as residual).
struct ZeroCheck {
    CheckStatus status;
    std::string residual;
};

ZeroCheck classify_equal(const RatExpr& a, const RatExpr& b);
ZeroCheck classify_zero(const RatExpr& a);
ZeroCheck classify_equal(const DifferentialForm& a, const DifferentialForm& b);
ZeroCheck classify_equal(const MultivectorField& a, const MultivectorField& b);
ZeroCheck classify_zero(const MultivectorField& a);
ZeroCheck combine(const ZeroCheck& a, const ZeroCheck& b);

// Convenience: run an equality check and append it to a report, timing it.
template <typename F>
void add_timed_check(VerificationReport& report, std::string id, std::string ref, F&& body) {
    auto start = std::chrono::steady_clock::now();
    CheckRecord rec;
    rec.id = std::move(id);
    rec.ref = std::move(ref);
    ZeroCheck z = body();
    rec.status = z.status;
    rec.residual = z.residual;
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - start)
                 .count();
    report.add(std::move(rec));
}

} // namespace reeb
