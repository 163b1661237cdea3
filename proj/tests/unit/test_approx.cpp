#include <doctest.h>

#include <cmath>
#include <random>

#include "gelfand/approx.hpp"
#include "gelfand/error.hpp"
#include "support.hpp"

using namespace gelfand;

namespace {

// de Casteljau in long double: independent of the library's Bernstein evaluation.
long double de_casteljau(std::vector<long double> coeffs, long double t) {
    for (std::size_t r = coeffs.size(); r-- > 1;)
        for (std::size_t k = 0; k < r; ++k) coeffs[k] = (1 - t) * coeffs[k] + t * coeffs[k + 1];
    return coeffs[0];
}

long double oracle_abs_error(unsigned n, unsigned points) {
    std::vector<long double> c(n + 1);
    for (unsigned k = 0; k <= n; ++k) c[k] = std::fabs(static_cast<long double>(k) / n - 0.5L);
    long double err = 0;
    for (unsigned i = 0; i < points; ++i) {
        const long double t = static_cast<long double>(i) / (points - 1);
        err = std::max(err, std::fabs(de_casteljau(c, t) - std::fabs(t - 0.5L)));
    }
    return err;
}

CompactBox unit_box(std::size_t d = 1) { return CompactBox(std::vector<std::pair<double, double>>(d, {0.0, 1.0})); }

} // namespace

TEST_CASE("seminorm examples") {
    auto cx = selfadjoint_algebra("C", {"x"});
    CompactBox k({{-2.0, 3.0}});
    for (unsigned r : {2u, 3u, 11u, 101u}) {
        auto e = seminorm_on_box(StarPoly::generator(cx, 0), k, r);
        CHECK(e.lower == 3.0);
        CHECK(e.upper == 3.0);
    }
    auto czz = free_pair_algebra("C", {"z"});
    CompactBox sq({{-1.0, 1.0}, {-1.0, 1.0}});
    auto ez = seminorm_on_box(StarPoly::generator(czz, 0), sq, 5);
    CHECK(ez.lower == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(ez.upper >= ez.lower);
    auto zero = seminorm_on_box(StarPoly(cx), k, 7);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == 0.0);
    CHECK_THROWS_AS(seminorm_on_box(StarPoly::generator(cx, 0), k, 1), Error);
    CHECK_THROWS_AS(seminorm_on_box(StarPoly::generator(cx, 0), sq, 3), Error);
}

TEST_CASE("seminorm of a tabulated target carries its slack") {
    CompactBox k({{0.0, 1.0}});
    auto f = TargetFunction::tabulated(k, 3, {0.0, 2.0, 1.0}, 0.25);
    auto e = seminorm_on_box(f, k, 5);
    CHECK(e.lower == 2.0);
    CHECK(e.upper == 2.5);
    CHECK(f(std::vector<double>{0.25}).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(TargetFunction::tabulated(k, 3, {0.0, 1.0}), Error);
}

TEST_CASE("grid refinement never lowers the estimate") {
    std::mt19937_64 rng(31);
    auto czz = free_pair_algebra("C", {"z"});
    CompactBox box({{-1.0, 0.5}, {-0.25, 2.0}});
    for (int k = 0; k < 40; ++k) {
        StarPoly a = testing::random_poly(czz, rng, 3, 4);
        double prev = 0.0;
        for (unsigned r : {2u, 3u, 5u, 9u, 17u, 33u}) {
            auto e = seminorm_on_box(a, box, r);
            CHECK(e.lower >= prev);
            CHECK(e.lower <= e.upper * (1 + 1e-12));
            prev = e.lower;
        }
    }
}

TEST_CASE("certified uppers are subadditive and submultiplicative") {
    std::mt19937_64 rng(37);
    const std::vector<PresentationPtr> pres{
        selfadjoint_algebra("C", {"x"}), free_pair_algebra("C", {"z"}),
        parse_presentation("algebra N; generator x : selfadjoint; relation x^2;", Mode::star_algebra)};
    for (int k = 0; k < 90; ++k) {
        const auto& p = pres[static_cast<std::size_t>(k) % pres.size()];
        std::vector<std::pair<double, double>> axes(chart(*p).size(), {-1.5, 0.75});
        CompactBox box(axes);
        StarPoly a = testing::random_poly(p, rng);
        StarPoly b = testing::random_poly(p, rng);
        const double ua = coefficient_bound(a, box);
        const double ub = coefficient_bound(b, box);
        CHECK(coefficient_bound(a + b, box) <= (ua + ub) * (1 + 1e-12));
        CHECK(coefficient_bound(a * b, box) <= ua * ub * (1 + 1e-12));
    }
}

TEST_CASE("bernstein of t^2 at degree 2") {
    auto r = bernstein_approx(TargetFunction::power(1, 2), unit_box(), 2);
    Terms expect;
    add_term(expect, Monomial{1}, ComplexRational(Rational(1, 2)));
    add_term(expect, Monomial{2}, ComplexRational(Rational(1, 2)));
    CHECK(r.approximant.polynomial().terms() == expect);
    CHECK(r.error.lower == 0.125);
    CHECK(r.error.upper == 0.125);
}

TEST_CASE("bernstein reproduces constants") {
    for (unsigned n : {1u, 3u, 10u, 40u}) {
        auto r = bernstein_approx(TargetFunction::constant(1, 1.0), unit_box(), n, 101);
        CHECK(r.approximant.polynomial() == StarPoly::constant(r.approximant.polynomial().presentation(), 1));
        CHECK(r.error.lower <= 1e-13);
    }
}

TEST_CASE("bernstein error for |t - 1/2| decreases and matches the oracle") {
    double prev = 1.0;
    for (unsigned n : {4u, 16u, 64u}) {
        auto r = bernstein_approx(TargetFunction::abs_shift(1), unit_box(), n);
        const long double oracle = oracle_abs_error(n, kDefaultErrorResolution);
        CHECK(std::fabs(r.error.lower - static_cast<double>(oracle)) < 1e-12);
        CHECK(r.error.lower < prev);
        prev = r.error.lower;
    }
}

TEST_CASE("bernstein endpoint interpolation and exact expansion") {
    auto f = TargetFunction::exponential(1);
    CompactBox box({{-1.0, 2.0}});
    auto r = bernstein_approx(f, box, 12, 31);
    CHECK(r.approximant(std::vector<double>{-1.0}) == f(std::vector<double>{-1.0}));
    CHECK(r.approximant(std::vector<double>{2.0}) == f(std::vector<double>{2.0}));
    // the exact monomial expansion agrees with Bernstein-form evaluation
    for (double x : {-1.0, -0.3, 0.5, 1.7, 2.0}) {
        const auto exact = evaluate(r.approximant.polynomial(), std::vector<std::complex<double>>{x});
        CHECK(std::abs(exact - r.approximant(std::vector<double>{x})) < 1e-9);
    }
}

TEST_CASE("bernstein in two and three variables") {
    auto f = TargetFunction::abs_shift(2);
    auto r = bernstein_approx(f, unit_box(2), 8, 41);
    CHECK(r.approximant.polynomial().presentation()->size() == 2);
    CHECK(r.approximant.polynomial().presentation()->generator(1).name == "t2");
    CHECK(r.approximant(std::vector<double>{0.0, 1.0}) == f(std::vector<double>{0.0, 1.0}));
    CHECK(r.error.lower > 0.0);
    // exp of a sum is a tensor product, so its Bernstein operator factorizes
    auto g = bernstein_approx(TargetFunction::exponential(3), unit_box(3), 3, 5);
    auto g1 = bernstein_approx(TargetFunction::exponential(1), unit_box(), 3, 5);
    const std::vector<double> pt{0.2, 0.7, 0.9};
    const auto prod = g1.approximant(std::vector<double>{0.2}) * g1.approximant(std::vector<double>{0.7}) *
                      g1.approximant(std::vector<double>{0.9});
    CHECK(std::abs(g.approximant(pt) - prod) < 1e-12);
    CHECK_THROWS_AS(bernstein_approx(TargetFunction::exponential(4), unit_box(4), 2, 3), Error);
    CHECK_THROWS_AS(bernstein_approx(TargetFunction::exponential(1), unit_box(), 0), Error);
    CHECK_THROWS_AS(bernstein_approx(TargetFunction::exponential(1), CompactBox({{1.0, 1.0}}), 3), Error);
}

TEST_CASE("undefined target") {
    TargetFunction bad("log", 1, [](std::span<const double> x) { return std::complex<double>(std::log(x[0]), 0.0); });
    CHECK_THROWS_AS(bernstein_approx(bad, unit_box(), 4, 11), Error);
}

TEST_CASE("density witness for the catalog") {
    for (const auto& name : TargetFunction::catalog_names()) {
        for (double eps : {0.2, 0.1, 0.05}) {
            auto w = density_witness(TargetFunction::catalog(name, 1), unit_box(), eps, 256, 1001);
            REQUIRE_MESSAGE(w.degree.has_value(), name);
            CHECK(*w.degree <= 256);
            CHECK(w.error < eps);
        }
    }
    CHECK_THROWS_AS(TargetFunction::catalog("sin", 1), Error);
}

TEST_CASE("wirtinger examples") {
    auto czz = free_pair_algebra("C", {"z"});
    CHECK(wirtinger_dzbar(parse_poly("z*adj(z)", czz), "z") == parse_poly("z", czz));
    CHECK(wirtinger_dzbar(parse_poly("z^2", czz), 0).is_zero());
    CHECK(wirtinger_dzbar(parse_poly("z^2*adj(z)^3", czz), "adj(z)") == parse_poly("3*z^2*adj(z)^2", czz));
    CHECK(is_holomorphic_image(parse_poly("z^3 + (2+1i)*z", czz), 0));
    CHECK_FALSE(is_holomorphic_image(parse_poly("z + adj(z)", czz), 0));
    CHECK(default_wirtinger_pair(*czz) == 0);
}

TEST_CASE("wirtinger preconditions") {
    auto cx = selfadjoint_algebra("C", {"x"});
    CHECK_THROWS_AS(wirtinger_dzbar(StarPoly::generator(cx, 0), 0), Error);
    CHECK_THROWS_AS(default_wirtinger_pair(*cx), Error);
    auto rel = parse_presentation("algebra R; generator z : free; relation z^2; relation adj(z)^2;",
                                  Mode::star_algebra);
    CHECK_THROWS_AS(wirtinger_dzbar(StarPoly::generator(rel, 0), 0), Error);
    auto two = free_pair_algebra("C", {"z", "w"});
    CHECK_THROWS_AS(default_wirtinger_pair(*two), Error);
    CHECK(wirtinger_dzbar(parse_poly("z*adj(w)", two), "w") == parse_poly("z", two));
}

TEST_CASE("wirtinger is linear and satisfies Leibniz") {
    std::mt19937_64 rng(41);
    auto czz = free_pair_algebra("C", {"z"});
    for (int k = 0; k < 100; ++k) {
        StarPoly a = testing::random_poly(czz, rng);
        StarPoly b = testing::random_poly(czz, rng);
        const ComplexRational s = testing::random_scalar(rng);
        CHECK(wirtinger_dzbar(a + s * b, 0) == wirtinger_dzbar(a, 0) + s * wirtinger_dzbar(b, 0));
        CHECK(wirtinger_dzbar(a * b, 0) == wirtinger_dzbar(a, 0) * b + a * wirtinger_dzbar(b, 0));
    }
}

TEST_CASE("kernel of wirtinger is the adjoint-free span up to degree 6") {
    auto czz = free_pair_algebra("C", {"z"});
    const auto monos = monomials_up_to(2, 6);
    std::size_t kernel = 0;
    std::vector<Monomial> images;
    for (const Monomial& m : monos) {
        Terms t;
        add_term(t, m, ComplexRational(1));
        StarPoly d = wirtinger_dzbar(StarPoly(czz, t), 0);
        if (d.is_zero()) {
            ++kernel;
            CHECK(m[1] == 0);
            continue;
        }
        REQUIRE(d.terms().size() == 1);
        images.push_back(d.terms().begin()->first);
    }
    // distinct single-monomial images: the map is injective off the kernel span
    std::sort(images.begin(), images.end());
    CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
    CHECK(kernel == 7);

    // every element of C[z] lands in the kernel under the unit inclusion
    std::mt19937_64 rng(43);
    auto cz = polynomial_algebra("A", {"z"});
    auto iota = unit_inclusion(cz);
    for (int k = 0; k < 50; ++k) {
        StarPoly p = testing::random_poly(cz, rng, 6, 5);
        StarPoly img = rebase(iota(p), czz);
        CHECK(is_holomorphic_image(img, 0));
    }
}
