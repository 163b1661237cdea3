#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gelfand/number.hpp"

namespace gelfand {

/// Exponent vector over the generators of a presentation. The empty product
/// (all zeros) is the unit.
using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& m);
Monomial unit_monomial(std::size_t generators);
Monomial generator_monomial(std::size_t generators, std::size_t index);
Monomial product(const Monomial& a, const Monomial& b);
bool divides(const Monomial& d, const Monomial& m);
/// m / d, assuming divides(d, m).
Monomial quotient(const Monomial& m, const Monomial& d);
Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

/// Graded lexicographic order: total degree first, then lexicographic with
/// generator 0 the most significant.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

/// Coefficient table, iterated from the leading monomial down.
using Terms = std::map<Monomial, ComplexRational, GrlexGreater>;

void add_term(Terms& terms, const Monomial& m, const ComplexRational& c);

/// All monomials in `generators` variables of total degree <= max_degree,
/// ascending in graded-lex order (the unit first).
std::vector<Monomial> monomials_up_to(std::size_t generators, unsigned max_degree);

} // namespace gelfand
