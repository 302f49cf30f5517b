#include "reeb/scalar.hpp"

#include "reeb/errors.hpp"

#include <ostream>

namespace reeb {

namespace {

std::string q_to_string(const mpq_class& q) {
    return q.get_str();
}

} // namespace

Scalar::Scalar(long num, long den) : re_(num, den), im_(0) {
    if (den == 0) throw DivisionByZero();
    re_.canonicalize();
}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

Scalar Scalar::from_decimal_string(const std::string& text) {
    try {
        const auto dot = text.find('.');
        if (dot != std::string::npos) {
            // mpq_class only reads num/den pairs, so scale the point away:
            // "-1.25" -> -125/100.
            const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            const std::size_t places = text.size() - dot - 1;
            if (digits.empty() || places == 0 || digits.find('.') != std::string::npos ||
                digits.find('/') != std::string::npos) {
                throw std::invalid_argument(text);
            }
            mpq_class q(digits, 10);
            mpz_class den(10);
            mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), places);
            q /= mpq_class(den);
            q.canonicalize();
            return Scalar(q);
        }
        mpq_class q(text);
        q.canonicalize();
        return Scalar(q);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + text, 0);
    }
}

bool Scalar::has_sign_out_front() const {
    if (im_ == 0) return re_ < 0;
    if (re_ == 0) return im_ < 0;
    return false;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = re;
    im_ = im;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
    if (norm == 0) throw DivisionByZero();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = re;
    im_ = im;
    return *this;
}

std::string Scalar::to_string() const {
    if (has_sign_out_front()) return "-" + (-*this).to_term_string();
    return to_term_string();
}

std::string Scalar::to_term_string() const {
    if (im_ == 0) {
        mpq_class r = re_ < 0 ? mpq_class(-re_) : re_;
        return q_to_string(re_ < 0 ? r : re_);
    }
    if (re_ == 0) {
        mpq_class m = im_ < 0 ? mpq_class(-im_) : im_;
        if (m == 1) return "i";
        return q_to_string(m) + "*i";
    }
    std::string out = "(" + q_to_string(re_);
    if (im_ < 0) {
        mpq_class m = -im_;
        out += " - " + (m == 1 ? std::string("i") : q_to_string(m) + "*i");
    } else {
        out += " + " + (im_ == 1 ? std::string("i") : q_to_string(im_) + "*i");
    }
    return out + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
}

} // namespace reeb
