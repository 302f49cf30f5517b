#include "reeb/report.hpp"

#include "reeb/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace reeb {

std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::pass_mod_constraint: return "pass-mod-constraint";
    case CheckStatus::fail: return "fail";
    case CheckStatus::measured: return "measured";
    }
    return "fail";
}

CheckStatus status_from_string(const std::string& text) {
    if (text == "pass") return CheckStatus::pass;
    if (text == "pass-mod-constraint") return CheckStatus::pass_mod_constraint;
    if (text == "fail") return CheckStatus::fail;
    if (text == "measured") return CheckStatus::measured;
    throw Error("unknown check status: " + text);
}

void VerificationReport::add(CheckRecord rec) {
    for (const auto& existing : checks_) {
        if (existing.id == rec.id) {
            throw Error("duplicate check id: " + rec.id);
        }
    }
    checks_.push_back(std::move(rec));
}

void VerificationReport::merge(const VerificationReport& other) {
    for (const auto& rec : other.checks()) {
        CheckRecord copy = rec;
        copy.id = other.suite() + "." + copy.id;
        add(std::move(copy));
    }
}

bool VerificationReport::all_passed() const {
    return fail_count() == 0;
}

std::size_t VerificationReport::fail_count() const {
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [](const CheckRecord& rec) {
            return rec.status == CheckStatus::fail;
        }));
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "suite: " << suite_ << "\n";
    std::size_t width = 4;
    for (const auto& rec : checks_) {
        width = std::max(width, rec.id.size());
    }
    for (const auto& rec : checks_) {
        os << "  " << rec.id << std::string(width - rec.id.size() + 2, ' ')
           << to_string(rec.status);
        if (!rec.measured.empty()) {
            os << "  measured: " << rec.measured;
        }
        if (!rec.residual.empty()) {
            os << "  residual: " << rec.residual;
        }
        os << "\n";
    }
    os << "result: " << fail_count() << " failed / " << checks_.size() << " checks\n";
    return os.str();
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json root;
    root["suite"] = suite_;
    root["checks"] = nlohmann::ordered_json::array();
    for (const auto& rec : checks_) {
        nlohmann::ordered_json item;
        item["id"] = rec.id;
        item["ref"] = rec.ref;
        item["status"] = to_string(rec.status);
        if (!rec.residual.empty()) {
            item["residual"] = rec.residual;
        }
        if (!rec.measured.empty()) {
            item["measured"] = rec.measured;
        }
        item["ms"] = rec.ms;
        root["checks"].push_back(std::move(item));
    }
    return root.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(const std::string& text) {
    nlohmann::ordered_json root = nlohmann::ordered_json::parse(text);
    VerificationReport report(root.at("suite").get<std::string>());
    for (const auto& item : root.at("checks")) {
        CheckRecord rec;
        rec.id = item.at("id").get<std::string>();
        rec.ref = item.at("ref").get<std::string>();
        rec.status = status_from_string(item.at("status").get<std::string>());
        if (item.contains("residual")) {
            rec.residual = item.at("residual").get<std::string>();
        }
        if (item.contains("measured")) {
            rec.measured = item.at("measured").get<std::string>();
        }
        rec.ms = item.at("ms").get<long long>();
        report.add(std::move(rec));
    }
    return report;
}

ZeroCheck classify_equal(const RatExpr& a, const RatExpr& b) {
    check_same_context(a.context(), b.context());
    Poly cross = a.num() * b.den() - b.num() * a.den();
    if (cross.is_zero()) {
        return {CheckStatus::pass, ""};
    }
    Poly reduced = a.context()->reduce(cross);
    if (reduced.is_zero()) {
        return {CheckStatus::pass_mod_constraint, ""};
    }
    return {CheckStatus::fail, reduced.to_string()};
}

ZeroCheck classify_zero(const RatExpr& a) {
    return classify_equal(a, RatExpr::constant(a.context(), Scalar(0)));
}

namespace {

template <typename Tensor>
ZeroCheck classify_equal_tensor(const Tensor& a, const Tensor& b) {
    check_same_chart(a.chart(), b.chart());
    ZeroCheck out{CheckStatus::pass, ""};
    std::set<IdxTuple> tuples;
    for (const auto& [idx, value] : a.components()) {
        tuples.insert(idx);
    }
    for (const auto& [idx, value] : b.components()) {
        tuples.insert(idx);
    }
    for (const auto& idx : tuples) {
        out = combine(out, classify_equal(a.component(idx), b.component(idx)));
        if (out.status == CheckStatus::fail) {
            break;
        }
    }
    return out;
}

} // namespace

ZeroCheck classify_equal(const DifferentialForm& a, const DifferentialForm& b) {
    return classify_equal_tensor(a, b);
}

ZeroCheck classify_equal(const MultivectorField& a, const MultivectorField& b) {
    return classify_equal_tensor(a, b);
}

ZeroCheck classify_zero(const MultivectorField& a) {
    return classify_equal_tensor(a, MultivectorField(a.chart(), a.degree()));
}

ZeroCheck combine(const ZeroCheck& a, const ZeroCheck& b) {
    if (a.status == CheckStatus::fail) return a;
    if (b.status == CheckStatus::fail) return b;
    if (a.status == CheckStatus::pass_mod_constraint) return a;
    return b;
}

} // namespace reeb
