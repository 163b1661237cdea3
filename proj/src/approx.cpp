#include "gelfand/approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gelfand/error.hpp"

namespace gelfand {

namespace {

constexpr std::size_t kMaxGridPoints = 50'000'000;

std::vector<double> binomial_row(unsigned n) {
    std::vector<double> row(n + 1, 1.0);
    for (unsigned k = 0; k < n; ++k) row[k + 1] = row[k] * (n - k) / (k + 1);
    return row;
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Row i, column k: coefficient of x^i contributed by the k-th Bernstein basis
// polynomial after substituting t = alpha x + beta.
std::vector<std::vector<Rational>> bernstein_to_monomial(unsigned n, const Rational& alpha, const Rational& beta) {
    std::vector<std::vector<Rational>> to_t(n + 1, std::vector<Rational>(n + 1, 0));
    for (unsigned k = 0; k <= n; ++k) {
        const mpz_class cnk = binomial(n, k);
        for (unsigned j = k; j <= n; ++j) {
            Rational v(cnk * binomial(n - k, j - k));
            if ((j - k) % 2 == 1) v = -v;
            to_t[j][k] = v;
        }
    }
    if (alpha == 1 && beta == 0) return to_t;
    std::vector<std::vector<Rational>> to_x(n + 1, std::vector<Rational>(n + 1, 0));
    std::vector<Rational> alpha_pow(n + 1, 1);
    std::vector<Rational> beta_pow(n + 1, 1);
    for (unsigned i = 1; i <= n; ++i) {
        alpha_pow[i] = alpha_pow[i - 1] * alpha;
        beta_pow[i] = beta_pow[i - 1] * beta;
    }
    for (unsigned i = 0; i <= n; ++i) {
        for (unsigned k = 0; k <= n; ++k) {
            Rational acc(0);
            for (unsigned j = std::max(i, k); j <= n; ++j) {
                if (sgn(to_t[j][k]) == 0) continue;
                acc += Rational(binomial(j, i)) * alpha_pow[i] * beta_pow[j - i] * to_t[j][k];
            }
            to_x[i][k] = acc;
        }
    }
    return to_x;
}

// Applies `m` along one axis of a (n+1)^d tensor stored first-axis-slowest.
void apply_along_axis(std::vector<Rational>& tensor, const std::vector<std::vector<Rational>>& m, unsigned n,
                      std::size_t dimension, std::size_t axis) {
    const std::size_t side = n + 1;
    std::size_t stride = 1;
    for (std::size_t a = axis + 1; a < dimension; ++a) stride *= side;
    const std::size_t block = stride * side;
    std::vector<Rational> fiber(side);
    for (std::size_t outer = 0; outer < tensor.size(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            for (std::size_t k = 0; k < side; ++k) fiber[k] = tensor[outer + inner + k * stride];
            for (std::size_t i = 0; i < side; ++i) {
                Rational acc(0);
                for (std::size_t k = 0; k < side; ++k)
                    if (sgn(m[i][k]) != 0 && sgn(fiber[k]) != 0) acc += m[i][k] * fiber[k];
                tensor[outer + inner + i * stride] = acc;
            }
        }
    }
}

std::vector<std::string> bernstein_names(std::size_t d) {
    if (d == 1) return {"t"};
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= d; ++i) names.push_back("t" + std::to_string(i));
    return names;
}

} // namespace

TargetFunction::TargetFunction(std::string name, std::size_t dimension, Fn fn, double modulus_slack)
    : name_(std::move(name)), dimension_(dimension), fn_(std::move(fn)), slack_(modulus_slack) {
    if (dimension_ == 0) throw Error("target function needs at least one coordinate");
    if (!(modulus_slack >= 0.0)) throw Error("modulus slack must be nonnegative");
}

TargetFunction TargetFunction::abs_shift(std::size_t dimension, double shift) {
    return TargetFunction("abs-shift", dimension, [shift](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += (xi - shift) * (xi - shift);
        return std::complex<double>(std::sqrt(s), 0.0);
    });
}

TargetFunction TargetFunction::exponential(std::size_t dimension) {
    return TargetFunction("exp", dimension, [](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += xi;
        return std::complex<double>(std::exp(s), 0.0);
    });
}

TargetFunction TargetFunction::power(std::size_t dimension, unsigned k) {
    return TargetFunction(k == 2 ? "square" : "power" + std::to_string(k), dimension,
                          [k](std::span<const double> x) {
                              double r = 1.0;
                              for (unsigned i = 0; i < k; ++i) r *= x[0];
                              return std::complex<double>(r, 0.0);
                          });
}

TargetFunction TargetFunction::constant(std::size_t dimension, double value) {
    return TargetFunction("constant", dimension,
                          [value](std::span<const double>) { return std::complex<double>(value, 0.0); });
}

TargetFunction TargetFunction::tabulated(const CompactBox& box, unsigned points_per_axis, std::vector<double> values,
                                         double modulus_slack) {
    const std::size_t d = box.dimension();
    if (points_per_axis < 2) throw Error("tabulated target needs at least 2 points per axis");
    std::size_t expected = 1;
    for (std::size_t a = 0; a < d; ++a) expected *= points_per_axis;
    if (values.size() != expected)
        throw Error("tabulated target expects " + std::to_string(expected) + " values, got " +
                    std::to_string(values.size()));
    auto fn = [box, points_per_axis, values = std::move(values)](std::span<const double> x) {
        const std::size_t dim = box.dimension();
        const double last = static_cast<double>(points_per_axis - 1);
        std::vector<std::size_t> cell(dim);
        std::vector<double> frac(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            const double width = box.upper(a) - box.lower(a);
            double s = width > 0 ? (x[a] - box.lower(a)) / width * last : 0.0;
            s = std::clamp(s, 0.0, last);
            std::size_t c = std::min<std::size_t>(static_cast<std::size_t>(s), points_per_axis - 2);
            cell[a] = c;
            frac[a] = s - static_cast<double>(c);
        }
        double acc = 0.0;
        for (std::size_t corner = 0; corner < (std::size_t{1} << dim); ++corner) {
            double w = 1.0;
            std::size_t idx = 0;
            for (std::size_t a = 0; a < dim; ++a) {
                const bool up = (corner >> a) & 1u;
                w *= up ? frac[a] : 1.0 - frac[a];
                idx = idx * points_per_axis + cell[a] + (up ? 1 : 0);
            }
            if (w != 0.0) acc += w * values[idx];
        }
        return std::complex<double>(acc, 0.0);
    };
    return TargetFunction("tabulated", d, std::move(fn), modulus_slack);
}

const std::vector<std::string>& TargetFunction::catalog_names() {
    static const std::vector<std::string> names{"abs-shift", "exp", "square", "constant"};
    return names;
}

TargetFunction TargetFunction::catalog(const std::string& name, std::size_t dimension) {
    if (name == "abs-shift") return abs_shift(dimension);
    if (name == "exp") return exponential(dimension);
    if (name == "square") return power(dimension, 2);
    if (name == "constant") return constant(dimension, 1.0);
    throw Error("unknown target function '" + name + "' (abs-shift, exp, square, constant)");
}

std::complex<double> TargetFunction::operator()(std::span<const double> x) const {
    if (x.size() != dimension_) throw Error("target function '" + name_ + "' takes " + std::to_string(dimension_) +
                                            " coordinates");
    const std::complex<double> v = fn_(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os << "target '" << name_ << "' undefined at (";
        for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
        os << ")";
        throw Error(os.str());
    }
    return v;
}

void for_each_grid_point(const CompactBox& box, unsigned resolution,
                         const std::function<void(const std::vector<double>&)>& visit) {
    if (resolution < 2) throw Error("grid resolution must be at least 2 per axis");
    const std::size_t d = box.dimension();
    std::size_t total = 1;
    for (std::size_t a = 0; a < d; ++a) {
        if (total > kMaxGridPoints / resolution) throw Error("grid too large");
        total *= resolution;
    }
    const double last = static_cast<double>(resolution - 1);
    std::vector<unsigned> idx(d, 0);
    std::vector<double> x(d);
    for (std::size_t step = 0; step < total; ++step) {
        for (std::size_t a = 0; a < d; ++a) {
            // k/(r-1) is computed as one correctly rounded division, so nested
            // grids (r2 - 1 a multiple of r1 - 1) share their points bit for bit
            const double s = static_cast<double>(idx[a]) / last;
            x[a] = box.lower(a) + (box.upper(a) - box.lower(a)) * s;
        }
        visit(x);
        for (std::size_t a = d; a-- > 0;) {
            if (++idx[a] < resolution) break;
            idx[a] = 0;
        }
    }
}

SeminormEstimate seminorm_on_box(const StarPoly& a, const CompactBox& box, unsigned resolution) {
    const double upper = coefficient_bound(a, box);  // also checks the chart dimension
    double lower = 0.0;
    if (!a.is_zero()) {
        const Presentation& pres = *a.presentation();
        for_each_grid_point(box, resolution, [&](const std::vector<double>& x) {
            lower = std::max(lower, std::abs(evaluate(a, chart_point(pres, x))));
        });
    } else if (resolution < 2) {
        throw Error("grid resolution must be at least 2 per axis");
    }
    return {lower, std::max(lower, upper), box, resolution};
}

SeminormEstimate seminorm_on_box(const TargetFunction& f, const CompactBox& box, unsigned resolution) {
    if (box.dimension() != f.dimension()) throw Error("box dimension does not match the target function");
    double lower = 0.0;
    for_each_grid_point(box, resolution, [&](const std::vector<double>& x) {
        lower = std::max(lower, std::abs(f(x)));
    });
    return {lower, lower * (1.0 + f.modulus_slack()), box, resolution};
}

BernsteinApproximant::BernsteinApproximant(CompactBox box, unsigned degree,
                                           std::vector<std::complex<double>> node_values, StarPoly polynomial)
    : box_(std::move(box)), degree_(degree), nodes_(std::move(node_values)), poly_(std::move(polynomial)),
      binomials_(binomial_row(degree)) {}

std::complex<double> BernsteinApproximant::operator()(std::span<const double> x) const {
    const std::size_t d = box_.dimension();
    const unsigned n = degree_;
    std::vector<std::vector<double>> basis(d, std::vector<double>(n + 1));
    for (std::size_t a = 0; a < d; ++a) {
        const double t = (x[a] - box_.lower(a)) / (box_.upper(a) - box_.lower(a));
        const double u = 1.0 - t;
        std::vector<double> tp(n + 1, 1.0);
        std::vector<double> up(n + 1, 1.0);
        for (unsigned k = 1; k <= n; ++k) {
            tp[k] = tp[k - 1] * t;
            up[k] = up[k - 1] * u;
        }
        for (unsigned k = 0; k <= n; ++k) basis[a][k] = binomials_[k] * tp[k] * up[n - k];
    }
    std::complex<double> acc(0.0, 0.0);
    std::vector<unsigned> idx(d, 0);
    for (std::size_t flat = 0; flat < nodes_.size(); ++flat) {
        double w = 1.0;
        for (std::size_t a = 0; a < d; ++a) w *= basis[a][idx[a]];
        acc += w * nodes_[flat];
        for (std::size_t a = d; a-- > 0;) {
            if (++idx[a] <= n) break;
            idx[a] = 0;
        }
    }
    return acc;
}

BernsteinReport bernstein_approx(const TargetFunction& f, const CompactBox& box, unsigned n, unsigned resolution) {
    const std::size_t d = box.dimension();
    if (n < 1) throw Error("Bernstein degree must be at least 1");
    if (d < 1 || d > 3) throw Error("Bernstein approximation supports 1 to 3 axes");
    if (f.dimension() != d) throw Error("box dimension does not match the target function");
    for (std::size_t a = 0; a < d; ++a)
        if (!(box.upper(a) > box.lower(a))) throw Error("Bernstein approximation needs a box of positive width");

    const std::size_t side = n + 1;
    std::size_t count = 1;
    for (std::size_t a = 0; a < d; ++a) count *= side;

    std::vector<std::complex<double>> nodes(count);
    std::vector<unsigned> idx(d, 0);
    std::vector<double> x(d);
    for (std::size_t flat = 0; flat < count; ++flat) {
        for (std::size_t a = 0; a < d; ++a)
            x[a] = box.lower(a) + (box.upper(a) - box.lower(a)) * (static_cast<double>(idx[a]) / n);
        nodes[flat] = f(x);
        for (std::size_t a = d; a-- > 0;) {
            if (++idx[a] <= n) break;
            idx[a] = 0;
        }
    }

    std::vector<Rational> re(count);
    std::vector<Rational> im(count);
    bool complex_valued = false;
    for (std::size_t i = 0; i < count; ++i) {
        re[i] = rational_from_double(nodes[i].real());
        im[i] = rational_from_double(nodes[i].imag());
        complex_valued = complex_valued || sgn(im[i]) != 0;
    }
    for (std::size_t a = 0; a < d; ++a) {
        const Rational lo = rational_from_double(box.lower(a));
        const Rational hi = rational_from_double(box.upper(a));
        const Rational alpha = 1 / Rational(hi - lo);
        const Rational beta = -lo / Rational(hi - lo);
        const auto m = bernstein_to_monomial(n, alpha, beta);
        apply_along_axis(re, m, n, d, a);
        if (complex_valued) apply_along_axis(im, m, n, d, a);
    }

    PresentationPtr pres = selfadjoint_algebra("bernstein", bernstein_names(d));
    Terms terms;
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
        Monomial m(idx.begin(), idx.end());
        add_term(terms, m, ComplexRational(re[flat], im[flat]));
        for (std::size_t a = d; a-- > 0;) {
            if (++idx[a] <= n) break;
            idx[a] = 0;
        }
    }

    BernsteinApproximant approximant(box, n, std::move(nodes), StarPoly(pres, std::move(terms)));
    double err = 0.0;
    for_each_grid_point(box, resolution, [&](const std::vector<double>& p) {
        err = std::max(err, std::abs(f(p) - approximant(p)));
    });
    SeminormEstimate error{err, err * (1.0 + f.modulus_slack()), box, resolution};
    return {std::move(approximant), error};
}

DensityWitness density_witness(const TargetFunction& f, const CompactBox& box, double epsilon, unsigned max_degree,
                               unsigned resolution) {
    DensityWitness w;
    for (unsigned n = 1; n <= max_degree; n *= 2) {
        const BernsteinReport r = bernstein_approx(f, box, n, resolution);
        w.error = r.error.lower;
        if (w.error < epsilon) {
            w.degree = n;
            return w;
        }
    }
    return w;
}

std::size_t default_wirtinger_pair(const Presentation& pres) {
    std::optional<std::size_t> pair;
    for (std::size_t i = 0; i < pres.size(); ++i) {
        if (pres.is_star() && pres.generator(i).link == AdjointLink::partner && !pres.is_follower(i)) {
            if (pair) throw Error("presentation has several free pairs; name the generator");
            pair = i;
        }
    }
    if (!pair) throw Error("presentation has no free generator pair z, adj(z)");
    return *pair;
}

StarPoly wirtinger_dzbar(const StarPoly& a, std::size_t generator) {
    const PresentationPtr& pres = a.presentation();
    if (!pres->is_star() || generator >= pres->size() || pres->generator(generator).link != AdjointLink::partner)
        throw Error("wirtinger derivative needs a free generator pair z, adj(z)");
    const std::size_t follower = pres->is_follower(generator) ? generator : pres->generator(generator).partner;
    const std::size_t leader = pres->generator(follower).partner;
    for (const Terms& r : pres->relations())
        for (const auto& [m, c] : r)
            if (m[leader] != 0 || m[follower] != 0)
                throw Error("unsupported: relations involve the pair " + pres->generator(leader).name + ", " +
                            display_name(*pres, follower));
    Terms out;
    for (const auto& [m, c] : a.terms()) {
        if (m[follower] == 0) continue;
        Monomial d = m;
        const unsigned e = d[follower]--;
        add_term(out, d, ComplexRational(static_cast<long>(e)) * c);
    }
    return StarPoly(pres, std::move(out));
}

StarPoly wirtinger_dzbar(const StarPoly& a, const std::string& generator) {
    auto idx = a.presentation()->find(generator);
    if (!idx) throw Error("unknown generator '" + generator + "'");
    return wirtinger_dzbar(a, *idx);
}

bool is_holomorphic_image(const StarPoly& a, std::size_t generator) {
    return wirtinger_dzbar(a, generator).is_zero();
}

} // namespace gelfand
