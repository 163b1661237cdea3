#include <doctest.h>

#include <random>

#include "gelfand/error.hpp"
#include "gelfand/morphism.hpp"
#include "gelfand/parser.hpp"
#include "support.hpp"

using namespace gelfand;

namespace {

PresentationPtr cx() { return selfadjoint_algebra("C", {"x"}); }
PresentationPtr czz() { return free_pair_algebra("C", {"z"}); }
PresentationPtr nil() {
    return parse_presentation("algebra N; generator x : selfadjoint; relation x^2;", Mode::star_algebra);
}
PresentationPtr unipotent() {
    return parse_presentation("algebra U; generator x : selfadjoint; relation x^2 - 1;", Mode::star_algebra);
}

// Term-by-term product without any rewriting, used as an oracle.
Terms naive_product(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) add_term(out, product(ma, mb), ca * cb);
    return out;
}

} // namespace

TEST_CASE("normalize examples") {
    auto n = nil();
    CHECK(parse_poly("x^3", n).is_zero());
    CHECK(parse_poly("x^2", unipotent()) == StarPoly::constant(unipotent(), 1));
    auto p = parse_poly("z*adj(z)", czz());
    CHECK(p.terms().size() == 1);
    CHECK(p.coefficient(Monomial{1, 1}) == ComplexRational(1));
}

TEST_CASE("multiplication examples") {
    auto c = cx();
    CHECK(parse_poly("(x+1)*(x-1)", c) == parse_poly("x^2 - 1", c));
    auto n = nil();
    CHECK((StarPoly::generator(n, 0) * StarPoly::generator(n, 0)).is_zero());
    auto f = czz();
    StarPoly z = StarPoly::generator(f, "z");
    StarPoly zs = StarPoly::generator(f, 1);
    StarPoly lhs = (z + zs) * (z - zs);
    CHECK(lhs.terms() == naive_product((z + zs).terms(), (z - zs).terms()));
    CHECK(lhs == parse_poly("z^2 - adj(z)^2", f));
}

TEST_CASE("mixed presentations are refused") {
    CHECK_THROWS_AS(StarPoly::generator(cx(), 0) + StarPoly::generator(czz(), 0), Error);
    CHECK_THROWS_AS(StarPoly::generator(cx(), 0) * StarPoly::constant(nil(), 1), Error);
}

TEST_CASE("involution examples") {
    auto c = cx();
    CHECK(involute(StarPoly::constant(c, ComplexRational(0, 3))) == StarPoly::constant(c, ComplexRational(0, -3)));
    CHECK(involute(parse_poly("(1+2i) + (3-1i)*x + (1/2i)*x^3", c)) ==
          parse_poly("(1-2i) + (3+1i)*x - (1/2i)*x^3", c));
    auto f = czz();
    CHECK(involute(parse_poly("(2+1i)*z + (0+5i)*adj(z)", f)) == parse_poly("(2-1i)*adj(z) + (0-5i)*z", f));
    CHECK_THROWS_WITH_AS(involute(StarPoly::generator(polynomial_algebra("A", {"z"}), 0)),
                         "no involution on underlying algebra", Error);
}

TEST_CASE("involution and ring laws on random polynomials") {
    std::mt19937_64 rng(11);
    for (const auto& pres : {cx(), czz(), nil(), unipotent()}) {
        for (int k = 0; k < 60; ++k) {
            StarPoly a = testing::random_poly(pres, rng);
            StarPoly b = testing::random_poly(pres, rng);
            StarPoly c = testing::random_poly(pres, rng);
            const ComplexRational s = testing::random_scalar(rng);
            const StarPoly one = StarPoly::constant(pres, 1);
            CHECK(involute(involute(a)) == a);
            CHECK(involute(a * b) == involute(a) * involute(b));
            CHECK(involute(s * a) == s.conj() * involute(a));
            CHECK(involute(one) == one);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * one == a);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("normal form stays in the ideal") {
    // raw p and its normal form differ by a multiple of x^2 - 1
    std::mt19937_64 rng(5);
    auto u = unipotent();
    auto free = selfadjoint_algebra("C", {"x"});
    for (int k = 0; k < 50; ++k) {
        Terms raw;
        for (int t = 0; t < 4; ++t) add_term(raw, testing::random_monomial(rng, 1, 7), testing::random_scalar(rng));
        StarPoly reduced(u, raw);
        StarPoly lifted(free, reduced.terms());
        StarPoly diff = StarPoly(free, raw) - lifted;
        // divide diff by x^2 - 1 over C[x]: remainder must vanish
        StarPoly rem = StarPoly(unipotent(), diff.terms());
        CHECK(rem.is_zero());
        for (const auto& [m, c] : reduced.terms()) CHECK(m[0] <= 1);
    }
}

TEST_CASE("presentation validation") {
    SUBCASE("non-confluent rules are rejected") {
        CHECK_THROWS_AS(parse_presentation("algebra A; generator x, y : free; relation x^2 - y; relation x*y - 1;",
                                           Mode::algebra),
                        Error);
    }
    SUBCASE("star closure") {
        // z^2 = i is not closed under the involution (adj(z)^2 = -i is missing)
        CHECK_THROWS_AS(parse_presentation("algebra A; generator z : free; relation z^2 - 1i;", Mode::star_algebra),
                        Error);
        CHECK_NOTHROW(parse_presentation("algebra A; generator z : free; relation z^2; relation adj(z)^2;",
                                         Mode::star_algebra));
    }
    SUBCASE("constant relation") {
        CHECK_THROWS_AS(parse_presentation("algebra A; generator x : free; relation 3;", Mode::algebra), Error);
    }
    SUBCASE("step budget") {
        PresentationLimits limits;
        limits.step_budget = 3;
        auto p = parse_presentation("algebra A; generator x : free; relation x^2 - x;", Mode::algebra, limits);
        Terms raw;
        add_term(raw, Monomial{40}, ComplexRational(1));
        CHECK_THROWS_WITH_AS(StarPoly(p, raw), doctest::Contains("x^2 - 1*x"), Error);
    }
}

TEST_CASE("free_star examples") {
    auto cz = polynomial_algebra("A", {"z"});
    auto f = free_star(*cz);
    CHECK(f->is_star());
    CHECK(structurally_equal(*f, *czz()));
    auto czw = polynomial_algebra("A", {"z", "w"});
    auto fw = free_star(*czw);
    REQUIRE(fw->size() == 4);
    CHECK(display_name(*fw, 1) == "adj(z)");
    CHECK(display_name(*fw, 2) == "w");
    CHECK(display_name(*fw, 3) == "adj(w)");
    auto nilz = parse_presentation("algebra N; generator z : free; relation z^2;", Mode::algebra);
    auto fn = free_star(*nilz);
    CHECK(fn->relations().size() == 2);
    CHECK(parse_poly("adj(z)^2", fn).is_zero());
    CHECK_FALSE(parse_poly("z*adj(z)", fn).is_zero());
    CHECK_THROWS_AS(free_star(*czz()), Error);
}

TEST_CASE("underlying examples") {
    auto u = underlying(*cx());
    CHECK_FALSE(u->is_star());
    CHECK(structurally_equal(*u, *polynomial_algebra("C", {"z"})));
    auto uz = underlying(*czz());
    CHECK(structurally_equal(*uz, *polynomial_algebra("C", {"z", "w"})));
    CHECK(uz->generator(1).name == "z_star");
    auto uf = underlying(*free_star(*polynomial_algebra("C", {"z"})));
    CHECK(uf->size() == 2);
    CHECK_FALSE(structurally_equal(*uf, *polynomial_algebra("C", {"z"})));
    CHECK(free_star(*underlying(*cx()))->size() == 2);
    CHECK_THROWS_AS(underlying(*polynomial_algebra("C", {"z"})), Error);
}

TEST_CASE("generator counts under F and U") {
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
        auto a = polynomial_algebra("A", names);
        CHECK(underlying(*free_star(*a))->size() == 2 * n);
        CHECK(underlying(*free_star(*a))->relations().size() == 0);
    }
}

TEST_CASE("morphism validation") {
    auto u = unipotent();
    auto c = cx();
    // x -> -x respects x^2 = 1
    CHECK_NOTHROW(Morphism(u, u, {parse_poly("-x", u)}));
    // x -> 2 does not
    CHECK_THROWS_AS(Morphism(u, c, {parse_poly("2", c)}), Error);
    CHECK_THROWS_AS(Morphism(c, c, {}), Error);
    Morphism sq(c, c, {parse_poly("x^2 + 1", c)});
    CHECK(sq(parse_poly("x^2", c)) == parse_poly("x^4 + 2*x^2 + 1", c));
    CHECK(sq(StarPoly::constant(c, 7)) == StarPoly::constant(c, 7));
}

TEST_CASE("is_star_hom examples") {
    auto c = cx();
    auto f = czz();
    CHECK(is_star_hom(Morphism::identity(c)).is_star_hom);
    Morphism to_z(c, f, {parse_poly("z", f)});
    auto check = is_star_hom(to_z);
    CHECK_FALSE(check.is_star_hom);
    CHECK(check.witness == std::size_t{0});
    CHECK_THROWS_AS(Morphism(c, f, {parse_poly("z", f)}, true), Error);
    CHECK(is_star_hom(Morphism(c, f, {parse_poly("z + adj(z)", f)})).is_star_hom);
}

TEST_CASE("extend_hom examples") {
    auto cz = polynomial_algebra("A", {"z"});
    SUBCASE("z to x") {
        auto b = cx();
        auto ub = underlying(*b);
        Morphism f(cz, ub, {StarPoly::generator(ub, 0)});
        Morphism g = extend_hom(f, b);
        CHECK(g.star());
        CHECK(g.image(0) == StarPoly::generator(b, 0));
        CHECK(g.image(1) == StarPoly::generator(b, 0));
    }
    SUBCASE("z to z adj(z)") {
        auto b = czz();
        auto ub = underlying(*b);
        Morphism f(cz, ub, {parse_poly("z*z_star", ub)});
        Morphism g = extend_hom(f, b);
        CHECK(g.image(1) == parse_poly("z*adj(z)", b));
        CHECK(is_star_hom(g).is_star_hom);
    }
    SUBCASE("anti-linearity") {
        auto b = cx();
        auto ub = underlying(*b);
        Morphism f(cz, ub, {parse_poly("(0+1i)*x", ub)});
        Morphism g = extend_hom(f, b);
        CHECK(g.image(1) == parse_poly("(0-1i)*x", b));
    }
}

TEST_CASE("extend_hom restricts to f along the unit") {
    std::mt19937_64 rng(3);
    auto a = polynomial_algebra("A", {"u", "v"});
    auto b = parse_presentation("algebra B; generator x : selfadjoint; generator z : free;", Mode::star_algebra);
    auto ub = underlying(*b);
    for (int k = 0; k < 40; ++k) {
        Morphism f(a, ub, {testing::random_poly(ub, rng), testing::random_poly(ub, rng)});
        Morphism g = extend_hom(f, b);
        Morphism back = compose(underlying(g), unit_inclusion(a));
        for (std::size_t i = 0; i < a->size(); ++i) CHECK(back.image(i).terms() == f.image(i).terms());
        CHECK(is_star_hom(g).is_star_hom);
    }
}

TEST_CASE("composition") {
    auto c = cx();
    Morphism f(c, c, {parse_poly("2*x", c)});
    Morphism g(c, c, {parse_poly("x + 1", c)});
    CHECK(compose(g, f).image(0) == parse_poly("2*x + 2", c));
    CHECK(compose(f, g).image(0) == parse_poly("2*x + 1", c));
}
