#pragma once

#include <random>

#include "gelfand/number.hpp"
#include "gelfand/star_poly.hpp"

namespace gelfand::testing {

inline Rational random_rational(std::mt19937_64& rng, long max_num = 5, long max_den = 4) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline ComplexRational random_scalar(std::mt19937_64& rng, bool complex = true) {
    if (!complex) return ComplexRational(random_rational(rng));
    return ComplexRational(random_rational(rng), random_rational(rng));
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t generators, unsigned max_degree) {
    Monomial m(generators, 0);
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    std::uniform_int_distribution<std::size_t> gen(0, generators - 1);
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) ++m[gen(rng)];
    return m;
}

inline StarPoly random_poly(const PresentationPtr& pres, std::mt19937_64& rng, unsigned max_degree = 3,
                            std::size_t max_terms = 4, bool complex = true) {
    std::uniform_int_distribution<std::size_t> count(0, max_terms);
    Terms t;
    const std::size_t n = count(rng);
    for (std::size_t k = 0; k < n; ++k)
        add_term(t, random_monomial(rng, pres->size(), max_degree), random_scalar(rng, complex));
    return StarPoly(pres, std::move(t));
}

} // namespace gelfand::testing
