#include "reeb/operators.hpp"

#include "reeb/errors.hpp"
#include "reeb/models.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace reeb {

namespace {

Scalar binomial(unsigned n, unsigned k) {
    if (k > n) return Scalar(0);
    Scalar out(1);
    for (unsigned i = 0; i < k; ++i) {
        out *= Scalar(static_cast<long>(n - i));
        out /= Scalar(static_cast<long>(i + 1));
    }
    return out;
}

Scalar multi_binomial(const Mono& alpha, const Mono& gamma) {
    Scalar out(1);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        out *= binomial(alpha[i], gamma[i]);
    }
    return out;
}

// Enumerates gamma <= alpha componentwise.
bool next_sub_index(const Mono& alpha, Mono& gamma) {
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (gamma[i] < alpha[i]) {
            ++gamma[i];
            for (std::size_t j = 0; j < i; ++j) gamma[j] = 0;
            return true;
        }
        gamma[i] = alpha[i];
    }
    return false;
}

} // namespace

DifferentialOperator::DifferentialOperator(ChartPtr chart) : chart_(std::move(chart)) {
    if (!chart_->solved().empty()) {
        throw ChartMismatch("differential operators require a chart without solved "
                            "coordinates");
    }
}

DifferentialOperator DifferentialOperator::multiplication(ChartPtr chart, const RatExpr& f) {
    DifferentialOperator out(std::move(chart));
    out.add_term(Mono(out.chart_->coordinates().size(), 0), f);
    return out;
}

void DifferentialOperator::add_term(Mono alpha, const RatExpr& coeff) {
    if (alpha.size() != chart_->coordinates().size()) {
        throw Error("multi-index length does not match the chart dimension");
    }
    check_same_context(coeff.context(), chart_->context());
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
        if (!coeff.is_zero()) terms_.emplace(std::move(alpha), coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

RatExpr DifferentialOperator::coefficient(const Mono& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? RatExpr(chart_->context()) : it->second;
}

unsigned DifferentialOperator::order() const {
    unsigned out = 0;
    for (const auto& [alpha, coeff] : terms_) {
        out = std::max(out, mono_degree(alpha));
    }
    return out;
}

bool DifferentialOperator::has_constant_coefficients() const {
    for (const auto& [alpha, coeff] : terms_) {
        for (std::size_t c : chart_->coordinates()) {
            if (!coeff.free_of(c)) return false;
        }
    }
    return true;
}

RatExpr DifferentialOperator::apply(const RatExpr& f) const {
    check_same_context(f.context(), chart_->context());
    RatExpr out(chart_->context());
    for (const auto& [alpha, coeff] : terms_) {
        RatExpr derived = f;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            for (unsigned k = 0; k < alpha[i]; ++k) {
                derived = derived.partial_derivative(chart_->coordinates()[i]);
            }
        }
        out += coeff * derived;
    }
    return out;
}

DifferentialOperator DifferentialOperator::compose(const DifferentialOperator& other) const {
    check_same_chart(chart_, other.chart_);
    DifferentialOperator out(chart_);
    for (const auto& [alpha, c] : terms_) {
        for (const auto& [beta, d] : other.terms_) {
            Mono gamma(alpha.size(), 0);
            do {
                RatExpr derived = d;
                for (std::size_t i = 0; i < gamma.size(); ++i) {
                    for (unsigned k = 0; k < gamma[i]; ++k) {
                        derived = derived.partial_derivative(chart_->coordinates()[i]);
                    }
                }
                if (derived.is_zero()) continue;
                Mono idx(alpha.size());
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    idx[i] = alpha[i] - gamma[i] + beta[i];
                }
                out.add_term(std::move(idx), c * derived * multi_binomial(alpha, gamma));
            } while (next_sub_index(alpha, gamma));
        }
    }
    return out;
}

DifferentialOperator DifferentialOperator::commutator(const DifferentialOperator& other) const {
    return compose(other) - other.compose(*this);
}

DifferentialOperator DifferentialOperator::operator-() const {
    DifferentialOperator out(chart_);
    for (const auto& [alpha, coeff] : terms_) {
        out.terms_.emplace(alpha, -coeff);
    }
    return out;
}

DifferentialOperator& DifferentialOperator::operator+=(const DifferentialOperator& o) {
    check_same_chart(chart_, o.chart_);
    for (const auto& [alpha, coeff] : o.terms_) {
        add_term(alpha, coeff);
    }
    return *this;
}

DifferentialOperator& DifferentialOperator::operator-=(const DifferentialOperator& o) {
    check_same_chart(chart_, o.chart_);
    for (const auto& [alpha, coeff] : o.terms_) {
        add_term(alpha, -coeff);
    }
    return *this;
}

DifferentialOperator DifferentialOperator::operator*(const RatExpr& f) const {
    DifferentialOperator out(chart_);
    for (const auto& [alpha, coeff] : terms_) {
        out.add_term(alpha, coeff * f);
    }
    return out;
}

DifferentialOperator DifferentialOperator::operator*(const Scalar& c) const {
    return *this * RatExpr::constant(chart_->context(), c);
}

std::string DifferentialOperator::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string cstr = it->second.to_string();
        bool negative = !cstr.empty() && cstr[0] == '-';
        std::string magnitude = negative ? cstr.substr(1) : cstr;
        // Multi-term coefficients keep their own sign inside parentheses.
        if (magnitude.find(' ') != std::string::npos) {
            magnitude = "(" + cstr + ")";
            negative = false;
        }
        if (first) {
            os << (negative ? "-" : "");
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        os << magnitude;
        for (std::size_t i = 0; i < it->first.size(); ++i) {
            if (it->first[i] > 0) {
                os << "*d" << it->first[i] << "("
                   << chart_->universe()->name(chart_->coordinates()[i]) << ")";
            }
        }
    }
    return os.str();
}

DifferentialOperator wave_operator(const ChartPtr& chart) {
    DifferentialOperator out(chart);
    const std::size_t n = chart->coordinates().size();
    for (std::size_t mu = 0; mu < 4; ++mu) {
        const std::size_t idx = chart->universe()->index("x" + std::to_string(mu));
        const auto& coords = chart->coordinates();
        const auto pos = std::find(coords.begin(), coords.end(), idx) - coords.begin();
        Mono alpha(n, 0);
        alpha[static_cast<std::size_t>(pos)] = 2;
        out.add_term(std::move(alpha),
                     RatExpr::constant(chart->context(), minkowski(mu, mu)));
    }
    return out;
}

DifferentialOperator parse_operator(const std::string& text, const ChartPtr& chart) {
    DifferentialOperator out(chart);
    const std::size_t n = chart->coordinates().size();

    // Split into top-level terms on +/- outside parentheses.
    struct Term {
        std::string body;
        bool negative;
    };
    std::vector<Term> split;
    std::string current;
    bool negative = false;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == '+' || ch == '-')) {
            std::string trimmed = current;
            trimmed.erase(0, trimmed.find_first_not_of(" \t"));
            if (trimmed.empty()) {
                // Leading sign of the first term.
                if (ch == '-') negative = !negative;
                current.clear();
                continue;
            }
            split.push_back({current, negative});
            current.clear();
            negative = ch == '-';
            continue;
        }
        current += ch;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in operator", text.size());
    split.push_back({current, negative});

    for (const auto& term : split) {
        Mono alpha(n, 0);
        RatExpr coeff = RatExpr::constant(chart->context(),
                                          term.negative ? Scalar(-1) : Scalar(1));
        // Split the term into *-joined factors, again at depth 0.
        std::vector<std::string> factors;
        std::string factor;
        int fdepth = 0;
        for (char ch : term.body) {
            if (ch == '(') ++fdepth;
            if (ch == ')') --fdepth;
            if (fdepth == 0 && ch == '*') {
                factors.push_back(factor);
                factor.clear();
                continue;
            }
            factor += ch;
        }
        factors.push_back(factor);
        bool any = false;
        for (std::string f : factors) {
            f.erase(0, f.find_first_not_of(" \t"));
            f.erase(f.find_last_not_of(" \t") + 1);
            if (f.empty()) throw ParseError("empty factor in operator term", 0);
            any = true;
            if (f[0] == 'd' && f.size() > 1 && std::isdigit(static_cast<unsigned char>(f[1]))) {
                std::size_t pos = 1;
                unsigned k = 0;
                while (pos < f.size() && std::isdigit(static_cast<unsigned char>(f[pos]))) {
                    k = k * 10 + static_cast<unsigned>(f[pos] - '0');
                    ++pos;
                }
                if (pos < f.size() && f[pos] == '(' && f.back() == ')') {
                    const std::string name = f.substr(pos + 1, f.size() - pos - 2);
                    const std::size_t idx = chart->universe()->index(name);
                    const auto& coords = chart->coordinates();
                    const auto found = std::find(coords.begin(), coords.end(), idx);
                    if (found == coords.end()) {
                        throw ParseError("derivative along a non-coordinate: " + name, 0);
                    }
                    alpha[static_cast<std::size_t>(found - coords.begin())] += k;
                    continue;
                }
            }
            coeff *= chart->scalar(f);
        }
        if (!any) throw ParseError("empty operator term", 0);
        out.add_term(std::move(alpha), coeff);
    }
    return out;
}

RatExpr iterated_commutator_value(const DifferentialOperator& op, const RatExpr& s,
                                  unsigned k) {
    DifferentialOperator current = op;
    const DifferentialOperator mult =
        DifferentialOperator::multiplication(op.chart(), s);
    for (unsigned i = 0; i < k; ++i) {
        current = current.commutator(mult);
    }
    for (const auto& [alpha, coeff] : current.terms()) {
        if (mono_degree(alpha) > 0) {
            throw NotMultiplication("the iterated commutator still differentiates (order " +
                                    std::to_string(current.order()) + ")");
        }
    }
    return current.coefficient(Mono(op.chart()->coordinates().size(), 0));
}

RatExpr iterated_symbol(const DifferentialOperator& op, const RatExpr& s, unsigned k) {
    Scalar factorial(1);
    for (unsigned i = 2; i <= k; ++i) {
        factorial *= Scalar(static_cast<long>(i));
    }
    return iterated_commutator_value(op, s, k) * (Scalar(1) / factorial);
}

RatExpr plane_wave_conjugation(const DifferentialOperator& op,
                               const std::vector<RatExpr>& momentum) {
    if (momentum.size() != op.chart()->coordinates().size()) {
        throw Error("momentum needs one component per chart coordinate");
    }
    if (!op.has_constant_coefficients()) {
        throw NonConstantCoefficients(
            "plane-wave conjugation requires coefficients free of the coordinates");
    }
    RatExpr out(op.chart()->context());
    for (const auto& [alpha, coeff] : op.terms()) {
        RatExpr term = coeff;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] > 0) {
                check_same_context(momentum[i].context(), op.chart()->context());
                term *= momentum[i].pow(static_cast<int>(alpha[i]));
            }
        }
        out += term;
    }
    return out;
}

RatExpr hj_residual(const ChartPtr& chart, const RatExpr& s, const RatExpr& c) {
    check_same_context(s.context(), chart->context());
    RatExpr out(chart->context());
    for (std::size_t mu = 0; mu < 4; ++mu) {
        const RatExpr d = s.partial_derivative("x" + std::to_string(mu));
        out += d * d * minkowski(mu, mu);
    }
    return out - c;
}

VerificationReport verify_operator_suite() {
    VerificationReport report("operator");
    auto universe = Universe::make(
        {"x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3", "k0", "k1", "k2", "k3", "m"});
    auto free_ctx = ConstraintContext::free_ring(universe);
    Poly on_shell = Poly::variable(universe, "m") * Poly::variable(universe, "m");
    for (std::size_t i = 1; i < 4; ++i) {
        Poly ki = Poly::variable(universe, "k" + std::to_string(i));
        on_shell += ki * ki;
    }
    auto shell_ctx =
        ConstraintContext::make(universe, {{universe->index("k0"), on_shell}});
    const std::vector<std::string> xs = {"x0", "x1", "x2", "x3"};
    ChartPtr chart = Chart::make("spacetime", free_ctx, xs);
    ChartPtr chart_on_shell = Chart::make("spacetime-on-shell", shell_ctx, xs);

    auto k_low = [&](const ContextPtr& ctx, std::size_t mu) {
        return RatExpr::variable(ctx, "k" + std::to_string(mu));
    };
    auto kdotk = [&](const ContextPtr& ctx) {
        RatExpr out(ctx);
        for (std::size_t mu = 0; mu < 4; ++mu) {
            out += k_low(ctx, mu) * k_low(ctx, mu) * minkowski(mu, mu);
        }
        return out;
    };
    auto linear_phase = [&](const ContextPtr& ctx) {
        RatExpr out(ctx);
        for (std::size_t mu = 0; mu < 4; ++mu) {
            out += k_low(ctx, mu) * RatExpr::variable(ctx, "x" + std::to_string(mu));
        }
        return out;
    };

    {
        auto start = std::chrono::steady_clock::now();
        CheckRecord rec;
        rec.id = "symbol.linear-phase";
        rec.ref = "iterated commutator of the wave operator with k·x gives k·k after "
                  "dividing by k!";
        const DifferentialOperator box = wave_operator(chart);
        const RatExpr raw = iterated_commutator_value(box, linear_phase(free_ctx), 2);
        const RatExpr sym = iterated_symbol(box, linear_phase(free_ctx), 2);
        const ZeroCheck z = combine(classify_equal(sym, kdotk(free_ctx)),
                                    classify_equal(raw, kdotk(free_ctx) * Scalar(2)));
        rec.status = z.status == CheckStatus::fail ? CheckStatus::fail : CheckStatus::measured;
        rec.residual = z.residual;
        rec.measured = "k! = 2";
        rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
        report.add(std::move(rec));
    }

    add_timed_check(report, "symbol.on-shell",
                    "the same symbol reduces to m^2 under k·k = m^2", [&] {
                        const DifferentialOperator box = wave_operator(chart_on_shell);
                        const RatExpr sym =
                            iterated_symbol(box, linear_phase(shell_ctx), 2);
                        const RatExpr m2 = RatExpr::variable(shell_ctx, "m").pow(2);
                        return classify_equal(sym, m2);
                    });

    {
        auto start = std::chrono::steady_clock::now();
        CheckRecord rec;
        rec.id = "symbol.quadratic-phase";
        rec.ref = "the order-2 symbol of the wave operator on (x-y)·(x-y) is "
                  "4 (x-y)·(x-y)";
        RatExpr s(free_ctx);
        RatExpr ww(free_ctx);
        for (std::size_t mu = 0; mu < 4; ++mu) {
            const RatExpr w = RatExpr::variable(free_ctx, "x" + std::to_string(mu)) -
                              RatExpr::variable(free_ctx, "y" + std::to_string(mu));
            ww += w * w * minkowski(mu, mu);
        }
        s = ww;
        const DifferentialOperator box = wave_operator(chart);
        const RatExpr sym = iterated_symbol(box, s, 2);
        const ZeroCheck z = classify_equal(sym, ww * Scalar(4));
        rec.status = z.status == CheckStatus::fail ? CheckStatus::fail : CheckStatus::measured;
        rec.residual = z.residual;
        rec.measured = "factor 4";
        rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
        report.add(std::move(rec));
    }

    add_timed_check(report, "symbol.order-reduction",
                    "one commutator with k·x drops the order of the wave operator to 1",
                    [&] {
                        const DifferentialOperator box = wave_operator(chart);
                        const DifferentialOperator mult =
                            DifferentialOperator::multiplication(chart, linear_phase(free_ctx));
                        const bool ok = box.commutator(mult).order() == 1;
                        return ZeroCheck{ok ? CheckStatus::pass : CheckStatus::fail,
                                         ok ? "" : "unexpected commutator order"};
                    });

    add_timed_check(report, "conjugation.wave-plus-mass",
                    "plane-wave conjugation sends the wave operator plus m^2 to "
                    "k·k + m^2",
                    [&] {
                        DifferentialOperator op = wave_operator(chart);
                        op += DifferentialOperator::multiplication(
                            chart, RatExpr::variable(free_ctx, "m").pow(2));
                        std::vector<RatExpr> momentum;
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            momentum.push_back(k_low(free_ctx, mu));
                        }
                        const RatExpr conjugated = plane_wave_conjugation(op, momentum);
                        const RatExpr expected =
                            kdotk(free_ctx) + RatExpr::variable(free_ctx, "m").pow(2);
                        return classify_equal(conjugated, expected);
                    });

    add_timed_check(report, "hj.linear-solution",
                    "k·(x-y) solves the eikonal equation with value m^2 under k·k = m^2",
                    [&] {
                        RatExpr s(shell_ctx);
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            s += k_low(shell_ctx, mu) *
                                 (RatExpr::variable(shell_ctx, "x" + std::to_string(mu)) -
                                  RatExpr::variable(shell_ctx, "y" + std::to_string(mu)));
                        }
                        const RatExpr m2 = RatExpr::variable(shell_ctx, "m").pow(2);
                        return classify_zero(hj_residual(chart_on_shell, s, m2));
                    });

    add_timed_check(report, "hj.off-shell-control",
                    "off the constraint the same residual is the nonzero defect k·k - m^2",
                    [&] {
                        RatExpr s(free_ctx);
                        for (std::size_t mu = 0; mu < 4; ++mu) {
                            s += k_low(free_ctx, mu) *
                                 (RatExpr::variable(free_ctx, "x" + std::to_string(mu)) -
                                  RatExpr::variable(free_ctx, "y" + std::to_string(mu)));
                        }
                        const RatExpr m2 = RatExpr::variable(free_ctx, "m").pow(2);
                        const RatExpr residual = hj_residual(chart, s, m2);
                        const bool ok =
                            !residual.is_zero() && residual == kdotk(free_ctx) - m2;
                        return ZeroCheck{ok ? CheckStatus::pass : CheckStatus::fail,
                                         ok ? "" : "unexpected off-shell residual"};
                    });

    add_timed_check(report, "compose.round-trip",
                    "parsing the printed wave operator reproduces it", [&] {
                        DifferentialOperator op = wave_operator(chart);
                        op += DifferentialOperator::multiplication(
                            chart, RatExpr::variable(free_ctx, "m").pow(2));
                        const DifferentialOperator reparsed =
                            parse_operator(op.to_string(), chart);
                        const DifferentialOperator diff = op - reparsed;
                        return ZeroCheck{diff.is_zero() ? CheckStatus::pass : CheckStatus::fail,
                                         diff.is_zero() ? "" : diff.to_string()};
                    });

    return report;
}

} // namespace reeb
