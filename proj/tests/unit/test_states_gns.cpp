#include <doctest.h>

#include <cmath>
#include <random>

#include "gelfand/error.hpp"
#include "gelfand/gns.hpp"
#include "support.hpp"

using namespace gelfand;

namespace {

PresentationPtr cx() { return selfadjoint_algebra("C", {"x"}); }

State two_point() {
    auto c = cx();
    return make_state(parse_state("state atomic { (x=1): 1/2 ; (x=-1): 1/2 }", *c), c);
}

State point_mass(const Rational& at) {
    auto c = cx();
    return State::atomic(c, {{validate_character(c, std::vector<ComplexRational>{at}), Rational(1)}});
}

State gaussian() { return State::gaussian(cx()); }

State uniform01(unsigned order = 16) {
    auto c = cx();
    return make_state(parse_state("state density \"uniform\" on [0,1] order " + std::to_string(order), *c), c);
}

Rational exact_real(const Number& n) {
    const auto& z = std::get<ComplexRational>(n);
    REQUIRE(z.is_real());
    return z.real();
}

std::complex<double> numeric(const Number& n) { return to_complex(n); }

// Independent oracle: monic orthogonal polynomials by exact Gram-Schmidt on
// the Hankel moment matrix m_{i+j}, with m_k = (k-1) m_{k-2}.
struct HermiteOracle {
    std::vector<std::vector<Rational>> monic;  // monic[n][k]: coefficient of x^k
    std::vector<Rational> norms;
};

HermiteOracle hermite_oracle(unsigned d) {
    std::vector<Rational> m(2 * d + 1);
    m[0] = 1;
    if (m.size() > 1) m[1] = 0;
    for (unsigned k = 2; k < m.size(); ++k) m[k] = Rational(k - 1) * m[k - 2];
    auto inner = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Rational s(0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * b[j] * m[i + j];
        return s;
    };
    HermiteOracle o;
    for (unsigned n = 0; n <= d; ++n) {
        std::vector<Rational> v(d + 1, Rational(0));
        v[n] = 1;
        for (unsigned j = 0; j < n; ++j) {
            const Rational c = inner(o.monic[j], v) / o.norms[j];
            for (unsigned k = 0; k <= d; ++k) v[k] -= c * o.monic[j][k];
        }
        o.norms.push_back(inner(v, v));
        o.monic.push_back(v);
    }
    return o;
}

StarPoly random_real_poly(const PresentationPtr& p, std::mt19937_64& rng) {
    return testing::random_poly(p, rng, 4, 4, true);
}

} // namespace

TEST_CASE("make_state examples") {
    State s = two_point();
    CHECK(s.kind() == State::Kind::atomic);
    CHECK(s.is_exact());
    REQUIRE(s.support().has_value());
    CHECK(s.support()->lower(0) == -1.0);
    CHECK(s.support()->upper(0) == 1.0);
    CHECK(s.continuity_constant() == 1.0);

    State g = gaussian();
    CHECK(g.kind() == State::Kind::analytic);
    CHECK(g.densely_defined());
    CHECK_FALSE(g.support().has_value());
    const std::vector<long> expected{1, 0, 1, 0, 3, 0, 15};
    for (unsigned k = 0; k < expected.size(); ++k) CHECK(*g.moment(Monomial{k}) == expected[k]);

    State u = uniform01();
    CHECK(u.kind() == State::Kind::quadrature);
    CHECK(u.nodes().size() == 16);
    CHECK(std::abs(numeric(expect(u, StarPoly::generator(cx(), 0))) - 0.5) < 1e-12);
}

TEST_CASE("make_state errors") {
    auto c = cx();
    CHECK_THROWS_AS(make_state(parse_state("state atomic { (x=1): 1/2 ; (x=-1): 1/3 }", *c), c), Error);
    CHECK_THROWS_AS(make_state(parse_state("state atomic { (x=1): 3/2 ; (x=-1): -1/2 }", *c), c), Error);
    CHECK_THROWS_AS(make_state(parse_state("state atomic { (x=(0+1i)): 1 }", *c), c), Rejection);
    State rescaled = make_state(parse_state("state atomic rescale { (x=1): 1 ; (x=-1): 3 }", *c), c);
    CHECK(rescaled.atoms()[1].weight == Rational(3, 4));
    CHECK_THROWS_AS(State::quadrature(c, CompactBox({{0.0, 1.0}}), {{0.5}, {1.5}}, {0.5, 0.5}, "custom"), Error);
    CHECK_THROWS_AS(State::quadrature(c, CompactBox({{0.0, 1.0}}), {{0.5}}, {0.9}, "custom"), Error);
    CHECK_NOTHROW(State::quadrature(c, CompactBox({{0.0, 1.0}}), {{0.5}}, {0.9}, "custom", true));
    CHECK_THROWS_AS(make_state(parse_state("state density \"cauchy\" on [0,1]", *c), c), Error);
    CHECK_THROWS_AS(State::gaussian(polynomial_algebra("A", {"z"})), Error);
    auto nil = parse_presentation("algebra N; generator x : selfadjoint; relation x^2;", Mode::star_algebra);
    CHECK_THROWS_AS(State::gaussian(nil), Error);
}

TEST_CASE("expect examples") {
    auto c = cx();
    CHECK(exact_real(expect(two_point(), parse_poly("x^2", c))) == 1);
    CHECK(exact_real(expect(gaussian(), parse_poly("x^4", c))) == 3);
    for (const State& s : {two_point(), gaussian(), point_mass(Rational(2, 3))})
        CHECK(exact_real(expect(s, StarPoly::constant(c, 1))) == 1);
    CHECK(std::abs(numeric(expect(uniform01(), StarPoly::constant(c, 1))) - 1.0) < 1e-12);
    // uniform on [0,1]: E(x^k) = 1/(k+1), exact for k < 2 * order
    for (unsigned k = 0; k < 20; ++k) {
        Terms t;
        add_term(t, Monomial{k}, ComplexRational(1));
        CHECK(std::abs(numeric(expect(uniform01(), StarPoly(c, t))) - 1.0 / (k + 1)) < 1e-12);
    }
}

TEST_CASE("triangular density") {
    auto c = cx();
    State t = make_state(parse_state("state density \"triangular\" on [-1,3] order 8", *c), c);
    CHECK(std::abs(numeric(expect(t, StarPoly::constant(c, 1))) - 1.0) < 1e-12);
    CHECK(std::abs(numeric(expect(t, parse_poly("x", c))) - 1.0) < 1e-12);
    // variance of the symmetric triangle on an interval of width w is w^2 / 24
    CHECK(std::abs(numeric(expect(t, parse_poly("(x - 1)^2", c))) - 16.0 / 24.0) < 1e-12);
}

TEST_CASE("gaussian on a free pair") {
    auto f = free_pair_algebra("C", {"z"});
    State g = State::gaussian(f);
    CHECK(exact_real(expect(g, parse_poly("z*adj(z)", f))) == 1);
    CHECK(exact_real(expect(g, parse_poly("z^2*adj(z)^2", f))) == 2);
    CHECK(exact_real(expect(g, parse_poly("z^3*adj(z)^3", f))) == 6);
    CHECK(exact_real(expect(g, parse_poly("z^2*adj(z)", f))) == 0);
    auto two = parse_presentation("algebra M; generator x : selfadjoint; generator z : free;", Mode::star_algebra);
    State partial = make_state(parse_state("state gaussian(x)", *two), two);
    CHECK(exact_real(expect(partial, parse_poly("x^2", two))) == 1);
    CHECK_THROWS_AS(expect(partial, parse_poly("x*z", two)), Error);
}

TEST_CASE("gram matrix examples") {
    auto g2 = gram_matrix(two_point(), 2);
    REQUIRE(g2.exact_gram.has_value());
    const ExactMatrix expect2{{1, 0, 1}, {0, 1, 0}, {1, 0, 1}};
    CHECK(*g2.exact_gram == expect2);
    auto gg = gram_matrix(gaussian(), 1);
    CHECK(*gg.exact_gram == ExactMatrix{{1, 0}, {0, 1}});
    auto gp = gram_matrix(point_mass(0), 2);
    CHECK(*gp.exact_gram == ExactMatrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK((gg.gram - gg.gram.adjoint()).norm() == 0.0);
}

TEST_CASE("gns basis: two point state") {
    GnsModel m = gns_model(two_point(), 2);
    CHECK(m.rank() == 2);
    REQUIRE(m.exact_null_space->size() == 1);
    CHECK(basis_polynomial(m, m.exact_null_space->front()) == parse_poly("x^2 - 1", cx()));
    Eigen::MatrixXcd id = m.orthonormal.adjoint() * m.gram * m.orthonormal;
    CHECK((id - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);

    auto op = multiplication_operator(two_point(), m, 0);
    REQUIRE(op.exact.has_value());
    CHECK(*op.exact == ExactMatrix{{0, 1}, {1, 0}});
}

TEST_CASE("gns basis: point mass") {
    GnsModel m = gns_model(point_mass(0), 2);
    CHECK(m.rank() == 1);
    REQUIRE(m.exact_null_space->size() == 2);
    CHECK(basis_polynomial(m, (*m.exact_null_space)[0]) == parse_poly("x", cx()));
    CHECK(basis_polynomial(m, (*m.exact_null_space)[1]) == parse_poly("x^2", cx()));
    auto op = multiplication_operator(point_mass(Rational(5, 3)), gns_model(point_mass(Rational(5, 3)), 2), 0);
    CHECK(*op.exact == ExactMatrix{{ComplexRational(Rational(5, 3))}});
}

TEST_CASE("gns basis: gaussian matches the hermite oracle") {
    const unsigned d = 5;
    GnsModel m = gns_model(gaussian(), d);
    CHECK(m.null_space.empty());
    REQUIRE(m.rank() == d + 1);
    const HermiteOracle o = hermite_oracle(d);
    // the oracle's monic polynomials are the probabilists' Hermite polynomials
    CHECK(o.monic[2] == std::vector<Rational>{-1, 0, 1, 0, 0, 0});
    CHECK(o.monic[5] == std::vector<Rational>{0, 15, 0, -10, 0, 1});
    for (unsigned n = 0; n <= d; ++n) {
        CHECK(o.norms[n] == Rational((*m.exact_norms)[n]));
        const double scale = std::sqrt(o.norms[n].get_d());
        for (unsigned k = 0; k <= d; ++k) {
            const std::complex<double> got = m.orthonormal(k, n);
            CHECK(std::abs(got - o.monic[n][k].get_d() / scale) < 1e-10);
        }
    }
    auto op = multiplication_operator(gaussian(), m, 0);
    for (unsigned i = 0; i <= d; ++i)
        for (unsigned j = 0; j <= d; ++j) {
            const double want = (i + 1 == j || j + 1 == i) ? std::sqrt(static_cast<double>(std::max(i, j))) : 0.0;
            CHECK(std::abs(op.matrix(i, j) - want) < 1e-10);
        }
    // x He_5 leaks into He_6: the last column reports the truncated mass
    CHECK(op.leakage.back() == doctest::Approx(6.0));
    CHECK(op.leakage.front() == doctest::Approx(0.0));
}

TEST_CASE("numeric route on a quadrature state") {
    GnsModel m = gns_model(uniform01(), 4);
    CHECK_FALSE(m.exact_gram.has_value());
    CHECK(m.rank() == 5);
    Eigen::MatrixXcd id = m.orthonormal.adjoint() * m.gram * m.orthonormal;
    CHECK((id - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-10);
    auto op = multiplication_operator(uniform01(), m, 0);
    CHECK((op.matrix - op.matrix.adjoint()).norm() < 1e-10);
    // the Jacobi matrix of the uniform measure on [0,1] has diagonal 1/2
    for (int i = 0; i < 5; ++i) CHECK(std::abs(op.matrix(i, i) - 0.5) < 1e-10);

    // a 3-node rule cannot separate more than 3 functions
    GnsModel small = gns_model(uniform01(3), 4);
    CHECK(small.rank() == 3);
    CHECK(small.null_space.size() == 2);
}

TEST_CASE("non PSD gram is rejected") {
    auto c = cx();
    auto bad = State::analytic(
        c, "signed",
        [](const Monomial& m) -> std::optional<Rational> { return m[0] == 2 ? Rational(-1) : Rational(m[0] == 0); },
        true);
    CHECK_THROWS_AS(gns_model(bad, 2), Rejection);
    GnsModel numeric_bad = gram_matrix(bad, 2);
    numeric_bad.exact_gram.reset();
    CHECK_THROWS_AS(gns_basis(numeric_bad), Rejection);
}

TEST_CASE("positivity and cauchy-schwarz on random polynomials") {
    std::mt19937_64 rng(53);
    auto c = cx();
    for (const State& s : {two_point(), gaussian(), uniform01()}) {
        for (int k = 0; k < 150; ++k) {
            StarPoly a = random_real_poly(c, rng);
            StarPoly b = random_real_poly(c, rng);
            const Number aa = expect(s, involute(a) * a);
            const Number bb = expect(s, involute(b) * b);
            const Number ab = expect(s, involute(a) * b);
            if (s.is_exact()) {
                CHECK(sgn(exact_real(aa)) >= 0);
                CHECK(std::get<ComplexRational>(ab).norm() <= exact_real(aa) * exact_real(bb));
            } else {
                CHECK(numeric(aa).real() >= -1e-10);
                const double lhs = std::norm(numeric(ab));
                const double rhs = numeric(aa).real() * numeric(bb).real();
                CHECK(lhs <= rhs + 1e-10 * std::max(1.0, rhs));
            }
        }
    }
}

TEST_CASE("gram consistency with the algebra layer") {
    std::mt19937_64 rng(59);
    auto f = free_pair_algebra("C", {"z"});
    State g = State::gaussian(f);
    GnsModel m = gram_matrix(g, 3);
    for (int k = 0; k < 40; ++k) {
        ExactVector v(m.basis.size());
        for (auto& x : v) x = testing::random_scalar(rng);
        StarPoly p = basis_polynomial(m, v);
        ComplexRational quad(0);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) quad += v[i].conj() * (*m.exact_gram)[i][j] * v[j];
        CHECK(quad == std::get<ComplexRational>(expect(g, involute(p) * p)));
        CHECK(basis_coordinates(m, p) == v);
    }
}

TEST_CASE("null space is an ideal at truncation order") {
    auto c = cx();
    State s = make_state(parse_state("state atomic { (x=0): 1/3 ; (x=1): 1/3 ; (x=2): 1/3 }", *c), c);
    GnsModel m = gns_model(s, 5);
    CHECK(m.rank() == 3);
    const StarPoly x = StarPoly::generator(c, 0);
    for (const ExactVector& v : *m.exact_null_space) {
        StarPoly p = basis_polynomial(m, v);
        if (p.degree() + 1 > m.degree) continue;
        StarPoly q = x * p;
        CHECK(std::get<ComplexRational>(expect(s, involute(q) * q)).is_zero());
    }
}

TEST_CASE("representation property and operator spectrum") {
    auto c = cx();
    State s = make_state(parse_state("state atomic { (x=-2): 1/4 ; (x=1/2): 1/4 ; (x=3): 1/2 }", *c), c);
    GnsModel m = gns_model(s, 4);
    CHECK(m.rank() == 3);
    auto op = multiplication_operator(s, m, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix);
    CHECK(std::abs(es.eigenvalues()(0) + 2.0) < 1e-8);
    CHECK(std::abs(es.eigenvalues()(1) - 0.5) < 1e-8);
    CHECK(std::abs(es.eigenvalues()(2) - 3.0) < 1e-8);
    for (double leak : op.leakage) CHECK(std::abs(leak) < 1e-9);
}

TEST_CASE("gns on a star algebra with a free pair") {
    auto f = free_pair_algebra("C", {"z"});
    State s = make_state(parse_state("state atomic { (z=(1+1i); adj(z)=(1-1i)): 1/2 ; (z=0; adj(z)=0): 1/2 }", *f), f);
    GnsModel m = gns_model(s, 2);
    CHECK(m.rank() == 2);
    auto op = multiplication_operator(s, m, 0);
    auto adj = multiplication_operator(s, m, 1);
    CHECK((op.matrix.adjoint() - adj.matrix).norm() < 1e-12);
}
