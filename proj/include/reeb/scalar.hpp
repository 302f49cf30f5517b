#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace reeb {

// Exact coefficient: a Gaussian rational re + im*i with arbitrary-precision
// parts. The imaginary part stays zero everywhere except in the plane-wave
// conjugation path, which is the only source of complex coefficients.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(int n) : re_(n), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(long num, long den);
    explicit Scalar(const mpq_class& re) : re_(re), im_(0) {}
    Scalar(mpq_class re, mpq_class im);

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
    // Accepts "n" or "n/d" with optional leading sign.
    static Scalar from_decimal_string(const std::string& text);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    // True when printing should pull a leading minus out of the coefficient.
    bool has_sign_out_front() const;

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order used only for deterministic container behaviour.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    std::string to_string() const;
    // Magnitude part of the printed form, sign stripped when
    // has_sign_out_front(); mixed complex values parenthesize.
    std::string to_term_string() const;

private:
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace reeb
