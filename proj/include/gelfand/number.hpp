#pragma once

#include <complex>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace gelfand {

using Rational = mpq_class;

/// Exact complex number with arbitrary-precision rational parts.
class ComplexRational {
public:
    ComplexRational() = default;
    ComplexRational(long re) : re_(re) {}
    ComplexRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    const Rational& real() const noexcept { return re_; }
    const Rational& imag() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    ComplexRational conj() const { return {re_, -im_}; }
    /// |z|^2, which stays rational.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    ComplexRational inverse() const;

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o);
    ComplexRational& operator/=(const ComplexRational& o) { return *this *= o.inverse(); }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

ComplexRational pow(const ComplexRational& base, unsigned exponent);

/// Exact double-to-rational conversion (every finite double is a dyadic rational).
Rational rational_from_double(double value);

/// "3", "-1/2", "(1/2+3i)", "(0-1i)". Real values print without parentheses.
std::string to_string(const ComplexRational& z);
std::string to_string(const Rational& q);

/// A value that is exact when all inputs were exact, and a double otherwise.
using Number = std::variant<ComplexRational, std::complex<double>>;

inline bool is_exact(const Number& n) { return std::holds_alternative<ComplexRational>(n); }

inline std::complex<double> to_complex(const Number& n) {
    if (const auto* q = std::get_if<ComplexRational>(&n)) return q->to_complex();
    return std::get<std::complex<double>>(n);
}

} // namespace gelfand
