#include "gelfand/number.hpp"

#include <cmath>
#include <stdexcept>

namespace gelfand {

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

ComplexRational ComplexRational::inverse() const {
    Rational n = norm();
    if (sgn(n) == 0) throw std::domain_error("division by zero");
    return {Rational(re_ / n), Rational(-im_ / n)};
}

ComplexRational pow(const ComplexRational& base, unsigned exponent) {
    ComplexRational result(1);
    ComplexRational b = base;
    while (exponent != 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1;
        if (exponent != 0) b *= b;
    }
    return result;
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw std::domain_error("non-finite value has no rational form");
    Rational q(value);  // mpq_set_d is exact
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ComplexRational& z) {
    if (z.is_real()) return z.real().get_str();
    std::string out = "(" + z.real().get_str();
    if (sgn(z.imag()) < 0) {
        out += "-" + Rational(-z.imag()).get_str();
    } else {
        out += "+" + z.imag().get_str();
    }
    out += "i)";
    return out;
}

} // namespace gelfand
