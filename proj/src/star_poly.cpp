#include "gelfand/star_poly.hpp"

#include "gelfand/error.hpp"

namespace gelfand {

StarPoly::StarPoly(PresentationPtr pres, Terms raw) : pres_(std::move(pres)) {
    if (!pres_) throw Error("polynomial without presentation");
    for (const auto& [m, c] : raw)
        if (m.size() != pres_->size()) throw Error("monomial arity does not match presentation");
    terms_ = pres_->normalize(std::move(raw));
}

StarPoly StarPoly::constant(PresentationPtr pres, const ComplexRational& c) {
    Terms t;
    add_term(t, unit_monomial(pres->size()), c);
    return StarPoly(std::move(pres), std::move(t));
}

StarPoly StarPoly::generator(PresentationPtr pres, std::size_t index) {
    if (index >= pres->size()) throw Error("generator index out of range");
    Terms t;
    t.emplace(generator_monomial(pres->size(), index), ComplexRational(1));
    return StarPoly(std::move(pres), std::move(t));
}

StarPoly StarPoly::generator(PresentationPtr pres, const std::string& name) {
    auto idx = pres->find(name);
    if (!idx) throw Error("unknown generator '" + name + "'");
    return generator(std::move(pres), *idx);
}

unsigned StarPoly::degree() const {
    // leading monomial has maximal total degree in graded order
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

ComplexRational StarPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ComplexRational() : it->second;
}

void StarPoly::require_same(const StarPoly& o) const {
    if (!same_algebra(*pres_, *o.pres_))
        throw Error("polynomials over different presentations ('" + pres_->name() + "' and '" +
                    o.pres_->name() + "')");
}

StarPoly& StarPoly::operator+=(const StarPoly& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
    return *this;
}

StarPoly& StarPoly::operator-=(const StarPoly& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(terms_, m, -c);
    return *this;
}

StarPoly& StarPoly::operator*=(const StarPoly& o) {
    require_same(o);
    Terms raw;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) add_term(raw, product(ma, mb), ca * cb);
    terms_ = pres_->normalize(std::move(raw));
    return *this;
}

StarPoly operator-(const StarPoly& a) {
    Terms t;
    for (const auto& [m, c] : a.terms_) t.emplace(m, -c);
    return StarPoly(a.pres_, std::move(t), 0);
}

StarPoly operator*(const ComplexRational& s, const StarPoly& a) {
    Terms t;
    if (!s.is_zero())
        for (const auto& [m, c] : a.terms_) t.emplace(m, s * c);
    return StarPoly(a.pres_, std::move(t), 0);
}

bool operator==(const StarPoly& a, const StarPoly& b) {
    a.require_same(b);
    return a.terms_ == b.terms_;
}

StarPoly pow(const StarPoly& base, unsigned exponent) {
    StarPoly result = StarPoly::constant(base.presentation(), ComplexRational(1));
    StarPoly b = base;
    while (exponent != 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1;
        if (exponent != 0) b *= b;
    }
    return result;
}

StarPoly rebase(const StarPoly& p, PresentationPtr target) {
    if (p.presentation()->size() != target->size() || p.presentation()->relations() != target->relations())
        throw Error("cannot move polynomial to presentation '" + target->name() + "': generators or relations differ");
    return StarPoly(std::move(target), p.terms());
}

StarPoly involute(const StarPoly& a) {
    const auto& pres = a.presentation();
    return StarPoly(pres, pres->involute_raw(a.terms()));
}

StarPoly random_poly(const PresentationPtr& pres, std::mt19937_64& rng, unsigned max_degree, std::size_t max_terms) {
    std::uniform_int_distribution<std::size_t> count(0, max_terms);
    std::uniform_int_distribution<unsigned> degree(0, max_degree);
    std::uniform_int_distribution<std::size_t> gen(0, pres->size() == 0 ? 0 : pres->size() - 1);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 4);
    Terms terms;
    const std::size_t n = count(rng);
    for (std::size_t k = 0; k < n; ++k) {
        Monomial m(pres->size(), 0);
        const unsigned d = pres->size() == 0 ? 0 : degree(rng);
        for (unsigned e = 0; e < d; ++e) ++m[gen(rng)];
        const long r = den(rng);
        const long re = num(rng);
        const long im = num(rng);
        add_term(terms, m, ComplexRational(Rational(re, r), Rational(im, r)));
    }
    return StarPoly(pres, std::move(terms));
}

} // namespace gelfand
