#pragma once

#include <cstddef>
#include <random>
#include <string>

#include "gelfand/presentation.hpp"

namespace gelfand {

/// Exact polynomial in normal form over a presentation. Immutable value.
class StarPoly {
public:
    /// Normalizes `raw` under the presentation's rewrite rules.
    StarPoly(PresentationPtr pres, Terms raw);
    explicit StarPoly(PresentationPtr pres) : pres_(std::move(pres)) {}

    static StarPoly constant(PresentationPtr pres, const ComplexRational& c);
    static StarPoly generator(PresentationPtr pres, std::size_t index);
    static StarPoly generator(PresentationPtr pres, const std::string& name);

    const PresentationPtr& presentation() const noexcept { return pres_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    unsigned degree() const;
    /// Coefficient of `m`, zero when absent.
    ComplexRational coefficient(const Monomial& m) const;

    StarPoly& operator+=(const StarPoly& o);
    StarPoly& operator-=(const StarPoly& o);
    StarPoly& operator*=(const StarPoly& o);

    friend StarPoly operator+(StarPoly a, const StarPoly& b) { return a += b; }
    friend StarPoly operator-(StarPoly a, const StarPoly& b) { return a -= b; }
    friend StarPoly operator*(StarPoly a, const StarPoly& b) { return a *= b; }
    friend StarPoly operator-(const StarPoly& a);
    friend StarPoly operator*(const ComplexRational& s, const StarPoly& a);

    /// Coefficient-table equality; presentations must be the same algebra.
    friend bool operator==(const StarPoly& a, const StarPoly& b);

private:
    StarPoly(PresentationPtr pres, Terms normal, int) : pres_(std::move(pres)), terms_(std::move(normal)) {}
    void require_same(const StarPoly& o) const;

    PresentationPtr pres_;
    Terms terms_;
};

StarPoly pow(const StarPoly& base, unsigned exponent);

/// Random polynomial with up to `max_terms` terms of total degree <= max_degree
/// and coefficients (p + q i)/r, |p|, |q| <= 5, 1 <= r <= 4. Deterministic per rng state.
StarPoly random_poly(const PresentationPtr& pres, std::mt19937_64& rng, unsigned max_degree = 3,
                     std::size_t max_terms = 4);

/// The same coefficient table over a structurally equal presentation
/// (for example moving between U(B) built twice, or between B and U(B)).
StarPoly rebase(const StarPoly& p, PresentationPtr target);

/// Conjugates coefficients and exchanges every generator with its adjoint.
/// Throws in algebra mode ("no involution on underlying algebra").
StarPoly involute(const StarPoly& a);

} // namespace gelfand
