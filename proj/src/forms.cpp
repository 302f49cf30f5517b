#include "reeb/forms.hpp"

#include "reeb/errors.hpp"

#include <algorithm>

namespace reeb {

int sort_tuple(IdxTuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
        for (std::size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
            std::swap(t[j], t[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return 0;
    return sign;
}

namespace {

std::string atom_string(const ChartPtr& chart, const IdxTuple& t, bool covariant) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) out += "/\\";
        if (covariant)
            out += "d(" + chart->basis_name(t[i]) + ")";
        else
            out += "@" + chart->basis_name(t[i]);
    }
    return out;
}

std::string coeff_string(const RatExpr& c) {
    std::string s = c.to_string();
    if (c.num().term_count() > 1 || !c.is_polynomial()) return "(" + s + ")";
    return s;
}

template <typename T>
std::string tensor_to_string(const T& tensor, bool covariant) {
    if (tensor.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, c] : tensor.components()) {
        std::string atoms = atom_string(tensor.chart(), t, covariant);
        std::string term;
        if (t.empty()) {
            term = c.to_string();
        } else if (c.is_constant() && c.constant_value().is_one()) {
            term = atoms;
        } else if (c.is_constant() && (-c).constant_value().is_one()) {
            term = "-" + atoms;
        } else {
            term = coeff_string(c) + "*" + atoms;
        }
        if (first) {
            out = term;
            first = false;
        } else if (term.size() > 1 && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

void check_tuple(const ChartPtr& chart, const IdxTuple& t, unsigned degree) {
    if (t.size() != degree) throw Error("component tuple has wrong length");
    for (std::size_t p : t)
        if (p >= chart->dim()) throw Error("component index out of range");
}

} // namespace

DifferentialForm::DifferentialForm(ChartPtr chart, unsigned degree)
    : chart_(std::move(chart)), degree_(degree) {}

DifferentialForm DifferentialForm::from_scalar(ChartPtr chart, RatExpr value) {
    check_same_context(chart->context(), value.context());
    DifferentialForm out(std::move(chart), 0);
    out.add_component({}, value);
    return out;
}

DifferentialForm DifferentialForm::coordinate_differential(ChartPtr chart,
                                                           const std::string& name) {
    std::size_t idx = chart->universe()->index(name);
    DifferentialForm out(chart, 1);
    const auto& solved = chart->solved();
    if (std::find(solved.begin(), solved.end(), idx) != solved.end()) {
        for (std::size_t pos = 0; pos < chart->dim(); ++pos) {
            RatExpr dw = RatExpr::coordinate_derivative(chart->context(), idx,
                                                        chart->basis()[pos]);
            out.add_component({pos}, dw);
        }
        return out;
    }
    const auto& coords = chart->coordinates();
    if (std::find(coords.begin(), coords.end(), idx) == coords.end())
        return out; // parameter: exact differential vanishes on the chart
    out.add_component({chart->basis_position(idx)}, RatExpr::constant(chart->context(), Scalar(1)));
    return out;
}

RatExpr DifferentialForm::component(IdxTuple idx) const {
    int sign = sort_tuple(idx);
    if (sign == 0) return RatExpr(chart_->context());
    auto it = comps_.find(idx);
    if (it == comps_.end()) return RatExpr(chart_->context());
    return sign == 1 ? it->second : -it->second;
}

void DifferentialForm::add_component(IdxTuple idx, const RatExpr& value) {
    check_same_context(chart_->context(), value.context());
    int sign = sort_tuple(idx);
    check_tuple(chart_, idx, degree_);
    if (sign == 0 || value.is_zero()) return;
    RatExpr v = sign == 1 ? value : -value;
    auto [it, fresh] = comps_.emplace(std::move(idx), v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm out(chart_, degree_);
    for (const auto& [t, c] : comps_) out.comps_.emplace(t, -c);
    return out;
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
    check_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw Error("adding forms of different degree");
    for (const auto& [t, c] : o.comps_) add_component(t, c);
    return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) {
    check_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw Error("adding forms of different degree");
    for (const auto& [t, c] : o.comps_) add_component(t, -c);
    return *this;
}

DifferentialForm DifferentialForm::operator*(const RatExpr& f) const {
    DifferentialForm out(chart_, degree_);
    for (const auto& [t, c] : comps_) out.add_component(t, c * f);
    return out;
}

DifferentialForm DifferentialForm::operator*(const Scalar& c) const {
    DifferentialForm out(chart_, degree_);
    for (const auto& [t, v] : comps_) out.add_component(t, v * c);
    return out;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    check_same_chart(a.chart_, b.chart_);
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

bool DifferentialForm::equal_mod(const DifferentialForm& o) const {
    return (*this - o).is_zero();
}

std::string DifferentialForm::to_string() const {
    return tensor_to_string(*this, true);
}

MultivectorField::MultivectorField(ChartPtr chart, unsigned degree)
    : chart_(std::move(chart)), degree_(degree) {}

MultivectorField MultivectorField::from_scalar(ChartPtr chart, RatExpr value) {
    check_same_context(chart->context(), value.context());
    MultivectorField out(std::move(chart), 0);
    out.add_component({}, value);
    return out;
}

MultivectorField MultivectorField::coordinate_vector(ChartPtr chart, const std::string& name) {
    std::size_t idx = chart->universe()->index(name);
    MultivectorField out(chart, 1);
    out.add_component({chart->basis_position(idx)},
                      RatExpr::constant(chart->context(), Scalar(1)));
    return out;
}

RatExpr MultivectorField::component(IdxTuple idx) const {
    int sign = sort_tuple(idx);
    if (sign == 0) return RatExpr(chart_->context());
    auto it = comps_.find(idx);
    if (it == comps_.end()) return RatExpr(chart_->context());
    return sign == 1 ? it->second : -it->second;
}

void MultivectorField::add_component(IdxTuple idx, const RatExpr& value) {
    check_same_context(chart_->context(), value.context());
    int sign = sort_tuple(idx);
    check_tuple(chart_, idx, degree_);
    if (sign == 0 || value.is_zero()) return;
    RatExpr v = sign == 1 ? value : -value;
    auto [it, fresh] = comps_.emplace(std::move(idx), v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

MultivectorField MultivectorField::operator-() const {
    MultivectorField out(chart_, degree_);
    for (const auto& [t, c] : comps_) out.comps_.emplace(t, -c);
    return out;
}

MultivectorField& MultivectorField::operator+=(const MultivectorField& o) {
    check_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw Error("adding fields of different degree");
    for (const auto& [t, c] : o.comps_) add_component(t, c);
    return *this;
}

MultivectorField& MultivectorField::operator-=(const MultivectorField& o) {
    check_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw Error("adding fields of different degree");
    for (const auto& [t, c] : o.comps_) add_component(t, -c);
    return *this;
}

MultivectorField MultivectorField::operator*(const RatExpr& f) const {
    MultivectorField out(chart_, degree_);
    for (const auto& [t, c] : comps_) out.add_component(t, c * f);
    return out;
}

MultivectorField MultivectorField::operator*(const Scalar& c) const {
    MultivectorField out(chart_, degree_);
    for (const auto& [t, v] : comps_) out.add_component(t, v * c);
    return out;
}

bool operator==(const MultivectorField& a, const MultivectorField& b) {
    check_same_chart(a.chart_, b.chart_);
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

bool MultivectorField::equal_mod(const MultivectorField& o) const {
    return (*this - o).is_zero();
}

RatExpr MultivectorField::apply(const RatExpr& f) const {
    if (degree_ != 1) throw Error("only 1-vector fields act as derivations");
    check_same_context(chart_->context(), f.context());
    RatExpr out(chart_->context());
    for (const auto& [t, c] : comps_)
        out += c * f.partial_derivative(chart_->basis()[t[0]]);
    return out;
}

std::string MultivectorField::to_string() const {
    return tensor_to_string(*this, false);
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b,
                       const CancelToken& tok) {
    check_same_chart(a.chart(), b.chart());
    DifferentialForm out(a.chart(), a.degree() + b.degree());
    for (const auto& [ta, ca] : a.components()) {
        tok.check();
        for (const auto& [tb, cb] : b.components()) {
            IdxTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            out.add_component(std::move(t), ca * cb);
        }
    }
    return out;
}

DifferentialForm wedge_power(const DifferentialForm& a, unsigned k, const CancelToken& tok) {
    if (k == 0)
        return DifferentialForm::from_scalar(a.chart(),
                                             RatExpr::constant(a.chart()->context(), Scalar(1)));
    DifferentialForm out = a;
    for (unsigned i = 1; i < k; ++i) out = wedge(out, a, tok);
    return out;
}

MultivectorField wedge(const MultivectorField& a, const MultivectorField& b,
                       const CancelToken& tok) {
    check_same_chart(a.chart(), b.chart());
    MultivectorField out(a.chart(), a.degree() + b.degree());
    for (const auto& [ta, ca] : a.components()) {
        tok.check();
        for (const auto& [tb, cb] : b.components()) {
            IdxTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            out.add_component(std::move(t), ca * cb);
        }
    }
    return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a, const CancelToken& tok) {
    const ChartPtr& chart = a.chart();
    DifferentialForm out(chart, a.degree() + 1);
    for (const auto& [t, c] : a.components()) {
        tok.check();
        for (std::size_t pos = 0; pos < chart->dim(); ++pos) {
            RatExpr dc = c.partial_derivative(chart->basis()[pos]);
            if (dc.is_zero()) continue;
            IdxTuple nt;
            nt.reserve(t.size() + 1);
            nt.push_back(pos);
            nt.insert(nt.end(), t.begin(), t.end());
            out.add_component(std::move(nt), dc);
        }
    }
    return out;
}

DifferentialForm differential(const ChartPtr& chart, const RatExpr& f) {
    return exterior_derivative(DifferentialForm::from_scalar(chart, f));
}

DifferentialForm interior_product(const MultivectorField& t, const DifferentialForm& w,
                                  const CancelToken& tok) {
    check_same_chart(t.chart(), w.chart());
    if (t.degree() > w.degree())
        throw Error("interior product by a field of higher degree than the form");
    DifferentialForm out(w.chart(), w.degree() - t.degree());
    for (const auto& [a, coef_t] : t.components()) {
        tok.check();
        for (const auto& [idx, coef_w] : w.components()) {
            // Contract slots left to right; each hit contributes the sign of
            // its position in what remains of the form tuple.
            IdxTuple rest = idx;
            int sign = 1;
            bool dead = false;
            for (std::size_t slot : a) {
                auto it = std::find(rest.begin(), rest.end(), slot);
                if (it == rest.end()) {
                    dead = true;
                    break;
                }
                auto pos = static_cast<std::size_t>(it - rest.begin());
                if (pos % 2 == 1) sign = -sign;
                rest.erase(it);
            }
            if (dead) continue;
            RatExpr v = coef_t * coef_w;
            out.add_component(rest, sign == 1 ? v : -v);
        }
    }
    return out;
}

DifferentialForm lie_derivative(const MultivectorField& x, const DifferentialForm& w,
                                const CancelToken& tok) {
    if (x.degree() != 1) throw Error("Lie derivative needs a 1-vector field");
    if (w.degree() == 0)
        return DifferentialForm::from_scalar(w.chart(), x.apply(w.component({})));
    DifferentialForm a = interior_product(x, exterior_derivative(w, tok), tok);
    DifferentialForm b = exterior_derivative(interior_product(x, w, tok), tok);
    return a + b;
}

namespace {

MultivectorField singleton_field(const ChartPtr& chart, const RatExpr& c, const IdxTuple& t) {
    MultivectorField out(chart, static_cast<unsigned>(t.size()));
    out.add_component(t, c);
    return out;
}

// Schouten bracket of two decomposable terms a d/dI, b d/dJ, by graded
// Leibniz reduction to vector-field and function base cases.
MultivectorField schouten_term(const ChartPtr& chart, const RatExpr& a, const IdxTuple& i,
                               const RatExpr& b, const IdxTuple& j, const CancelToken& tok) {
    tok.check();
    const auto p = i.size();
    const auto q = j.size();
    const ContextPtr& ctx = chart->context();
    if (p == 0 && q == 0) return MultivectorField(chart, 0);
    if (p == 0) {
        // [f, B] = -(-1)^(q-1) [B, f]
        MultivectorField rev = schouten_term(chart, b, j, a, i, tok);
        return q % 2 == 0 ? rev : -rev;
    }
    if (p == 1) {
        MultivectorField out(chart, static_cast<unsigned>(q));
        std::size_t dir = chart->basis()[i[0]];
        out.add_component(j, a * b.partial_derivative(dir));
        for (std::size_t k = 0; k < q; ++k) {
            RatExpr da = a.partial_derivative(chart->basis()[j[k]]);
            if (da.is_zero()) continue;
            IdxTuple t = j;
            t[k] = i[0];
            out.add_component(std::move(t), -(da * b));
        }
        return out;
    }
    // Split off the first factor: a d/dI = (a X) /\ d/dI'.
    IdxTuple head{i[0]};
    IdxTuple tail(i.begin() + 1, i.end());
    RatExpr one = RatExpr::constant(ctx, Scalar(1));
    MultivectorField part1 =
        wedge(singleton_field(chart, a, head), schouten_term(chart, one, tail, b, j, tok), tok);
    MultivectorField part2 =
        wedge(schouten_term(chart, a, head, b, j, tok), singleton_field(chart, one, tail), tok);
    int sgn = (static_cast<int>(q - 1) * static_cast<int>(p - 1)) % 2 == 0 ? 1 : -1;
    return sgn == 1 ? part1 + part2 : part1 - part2;
}

} // namespace

MultivectorField schouten_bracket(const MultivectorField& a, const MultivectorField& b,
                                  const CancelToken& tok) {
    check_same_chart(a.chart(), b.chart());
    unsigned p = a.degree(), q = b.degree();
    unsigned degree = p + q == 0 ? 0 : p + q - 1;
    MultivectorField out(a.chart(), degree);
    for (const auto& [i, ca] : a.components())
        for (const auto& [j, cb] : b.components())
            out += schouten_term(a.chart(), ca, i, cb, j, tok);
    // The recursion realizes the convention whose wedge Leibniz rule is
    // [P, Q/\R] = [P,Q]/\R + (-1)^((p-1)|Q|) Q/\[P,R]. The published
    // bracket is the other classical sign choice, differing by
    // (-1)^((p-1)(q-1)); both extend the Lie bracket and satisfy the same
    // graded antisymmetry and Jacobi identities.
    if (p % 2 == 0 && q % 2 == 0) return -out;
    return out;
}

MultivectorField lie_derivative(const MultivectorField& x, const MultivectorField& t,
                                const CancelToken& tok) {
    if (x.degree() != 1) throw Error("Lie derivative needs a 1-vector field");
    return schouten_bracket(x, t, tok);
}

DifferentialForm pullback(const SmoothMap& map, const DifferentialForm& w,
                          const CancelToken& tok) {
    check_same_chart(map.target(), w.chart());
    const ChartPtr& src = map.source();
    DifferentialForm out(src, w.degree());
    if (w.degree() == 0) {
        if (!w.is_zero()) out.add_component({}, map.pull_scalar(w.component({})));
        return out;
    }
    std::map<std::size_t, DifferentialForm> dphi; // target basis position -> 1-form
    auto dphi_for = [&](std::size_t pos) -> const DifferentialForm& {
        auto it = dphi.find(pos);
        if (it == dphi.end()) {
            std::size_t target_idx = map.target()->basis()[pos];
            DifferentialForm d = differential(src, map.component(target_idx));
            it = dphi.emplace(pos, std::move(d)).first;
        }
        return it->second;
    };
    for (const auto& [t, c] : w.components()) {
        tok.check();
        DifferentialForm term = DifferentialForm::from_scalar(src, map.pull_scalar(c));
        for (std::size_t pos : t) term = wedge(term, dphi_for(pos), tok);
        out += term;
    }
    return out;
}

MultivectorField restrict_to_chart(const MultivectorField& ambient, const ChartPtr& chart,
                                   const CancelToken& tok) {
    const ChartPtr& amb = ambient.chart();
    if (!amb->universe()->same_as(*chart->universe()))
        throw ChartMismatch("charts live over different universes");
    if (amb->is_cut_out())
        throw ChartMismatch("source of a restriction must be a plain chart");
    const ContextPtr& ctx = chart->context();
    const std::size_t dim = chart->dim();

    // Codes 0..dim-1 are intrinsic basis directions, dim+r the normal
    // direction of the r-th solved coordinate.
    const auto& solved = chart->solved();
    auto code_of_solved = [&](std::size_t universe_idx) -> std::size_t {
        for (std::size_t r = 0; r < solved.size(); ++r)
            if (solved[r] == universe_idx) return dim + r;
        throw UnknownSymbol(chart->universe()->name(universe_idx));
    };

    // Expansion of each ambient coordinate vector in the code space.
    std::map<std::size_t, std::vector<std::pair<std::size_t, RatExpr>>> expansion;
    auto expand = [&](std::size_t amb_pos)
        -> const std::vector<std::pair<std::size_t, RatExpr>>& {
        auto it = expansion.find(amb_pos);
        if (it != expansion.end()) return it->second;
        std::size_t u = amb->basis()[amb_pos];
        std::vector<std::pair<std::size_t, RatExpr>> vecs;
        if (std::find(solved.begin(), solved.end(), u) != solved.end()) {
            vecs.emplace_back(code_of_solved(u), RatExpr::constant(ctx, Scalar(1)));
        } else {
            vecs.emplace_back(chart->basis_position(u), RatExpr::constant(ctx, Scalar(1)));
            for (std::size_t w : solved) {
                RatExpr dw = RatExpr::coordinate_derivative(ctx, w, u);
                if (!dw.is_zero()) vecs.emplace_back(code_of_solved(w), -dw);
            }
        }
        return expansion.emplace(amb_pos, std::move(vecs)).first->second;
    };

    std::map<IdxTuple, RatExpr> accum; // tuples in code space
    for (const auto& [t, c] : ambient.components()) {
        tok.check();
        RatExpr coeff = RatExpr::fraction(c.num(), c.den(), ctx);
        std::vector<std::pair<IdxTuple, RatExpr>> partial{{IdxTuple{}, coeff}};
        for (std::size_t amb_pos : t) {
            std::vector<std::pair<IdxTuple, RatExpr>> next;
            for (const auto& [codes, cf] : partial) {
                for (const auto& [code, vc] : expand(amb_pos)) {
                    IdxTuple nt = codes;
                    nt.push_back(code);
                    next.emplace_back(std::move(nt), cf * vc);
                }
            }
            partial = std::move(next);
        }
        for (auto& [codes, cf] : partial) {
            int sign = sort_tuple(codes);
            if (sign == 0 || cf.is_zero()) continue;
            RatExpr v = sign == 1 ? cf : -cf;
            auto [it, fresh] = accum.emplace(std::move(codes), v);
            if (!fresh) {
                it->second += v;
                if (it->second.is_zero()) accum.erase(it);
            }
        }
    }

    MultivectorField out(chart, ambient.degree());
    for (const auto& [codes, cf] : accum) {
        bool normal = false;
        for (std::size_t code : codes)
            if (code >= dim) normal = true;
        if (normal)
            throw NotTangent("field has a component off the constraint surface: " +
                             cf.to_string());
        out.add_component(codes, cf);
    }
    return out;
}

} // namespace reeb
