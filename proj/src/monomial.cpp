#include "gelfand/monomial.hpp"

#include <algorithm>
#include <numeric>

namespace gelfand {

unsigned total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0u);
}

Monomial unit_monomial(std::size_t generators) { return Monomial(generators, 0); }

Monomial generator_monomial(std::size_t generators, std::size_t index) {
    Monomial m(generators, 0);
    m.at(index) = 1;
    return m;
}

Monomial product(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
    return m;
}

bool divides(const Monomial& d, const Monomial& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

Monomial quotient(const Monomial& m, const Monomial& d) {
    Monomial q(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) q[i] = m[i] - d[i];
    return q;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) return false;
    return true;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void add_term(Terms& terms, const Monomial& m, const ComplexRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

namespace {

void compositions(std::size_t n, unsigned degree, std::size_t pos, Monomial& cur,
                  std::vector<Monomial>& out) {
    if (pos + 1 == n) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (unsigned e = degree + 1; e-- > 0;) {
        cur[pos] = e;
        compositions(n, degree - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<Monomial> monomials_up_to(std::size_t generators, unsigned max_degree) {
    std::vector<Monomial> out;
    if (generators == 0) {
        out.emplace_back();
        return out;
    }
    for (unsigned d = 0; d <= max_degree; ++d) {
        std::vector<Monomial> level;
        Monomial cur(generators, 0);
        compositions(generators, d, 0, cur, level);
        // compositions() emits lexicographically descending within a degree
        std::reverse(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace gelfand
