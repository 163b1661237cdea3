#include "gelfand/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gelfand/error.hpp"
#include "gelfand/quadrature.hpp"

namespace gelfand {

namespace {

void require_star(const PresentationPtr& pres) {
    if (!pres) throw Error("state needs a presentation");
    if (!pres->is_star()) throw Error("states are defined on star presentations (E(a*a) needs an involution)");
}

CompactBox bounding_box(const Presentation& pres, const std::vector<std::vector<double>>& points) {
    const std::size_t d = chart(pres).size();
    std::vector<std::pair<double, double>> axes(d, {std::numeric_limits<double>::infinity(),
                                                    -std::numeric_limits<double>::infinity()});
    for (const auto& p : points)
        for (std::size_t a = 0; a < d; ++a) {
            axes[a].first = std::min(axes[a].first, p[a]);
            axes[a].second = std::max(axes[a].second, p[a]);
        }
    return CompactBox(std::move(axes));
}

std::vector<double> chart_coordinates(const Presentation& pres, const Character& c) {
    const auto values = c.numeric_values();
    std::vector<double> coords;
    for (const Axis& ax : chart(pres))
        coords.push_back(ax.imaginary ? values[ax.generator].imag() : values[ax.generator].real());
    return coords;
}

Rational double_factorial_moment(unsigned k) {
    if (k % 2 == 1) return 0;
    mpz_class r = 1;
    for (unsigned j = k; j > 1; j -= 2) r *= j - 1;
    return Rational(r);
}

Rational factorial(unsigned k) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return Rational(r);
}

// Per-axis tensor rule for a named density on [lo, hi], weights including the density.
QuadratureRule density_rule(const std::string& density, unsigned order, double lo, double hi) {
    const double width = hi - lo;
    if (!(width > 0)) throw Error("density state needs a box of positive width");
    if (density == "uniform") {
        QuadratureRule r = gauss_legendre(order, lo, hi);
        for (double& w : r.weights) w /= width;
        return r;
    }
    if (density == "triangular") {
        // piecewise linear: integrate each half separately so the rule stays exact
        const double mid = 0.5 * (lo + hi);
        QuadratureRule out;
        for (const auto& [a, b] : {std::pair{lo, mid}, std::pair{mid, hi}}) {
            QuadratureRule r = gauss_legendre(order, a, b);
            for (unsigned i = 0; i < order; ++i) {
                const double x = r.nodes[i];
                const double h = 2.0 / width * (1.0 - std::abs(2.0 * (x - mid) / width));
                out.nodes.push_back(x);
                out.weights.push_back(r.weights[i] * h);
            }
        }
        return out;
    }
    throw Error("unknown density '" + density + "' (uniform, triangular)");
}

} // namespace

const std::vector<std::string>& density_names() {
    static const std::vector<std::string> names{"uniform", "triangular"};
    return names;
}

State State::atomic(PresentationPtr pres, std::vector<Atom> atoms, bool rescale) {
    require_star(pres);
    if (atoms.empty()) throw Error("atomic state needs at least one atom");
    Rational total(0);
    for (const Atom& a : atoms) {
        if (!structurally_equal(*a.character.presentation(), *pres))
            throw Error("atom character belongs to another presentation");
        if (sgn(a.weight) <= 0) throw Error("atomic state weights must be positive, got " + a.weight.get_str());
        total += a.weight;
    }
    if (total != 1) {
        if (!rescale) throw Error("atomic state weights sum to " + total.get_str() + ", not 1 (use rescale)");
        for (Atom& a : atoms) a.weight /= total;
    }
    State s;
    s.kind_ = Kind::atomic;
    s.pres_ = std::move(pres);
    s.name_ = "atomic";
    std::vector<std::vector<double>> points;
    for (const Atom& a : atoms) points.push_back(chart_coordinates(*s.pres_, a.character));
    s.support_ = bounding_box(*s.pres_, points);
    s.atoms_ = std::move(atoms);
    return s;
}

State State::quadrature(PresentationPtr pres, CompactBox box, std::vector<std::vector<double>> nodes,
                        std::vector<double> weights, std::string density, bool rescale) {
    require_star(pres);
    const std::size_t d = chart(*pres).size();
    if (box.dimension() != d)
        throw Error("box has " + std::to_string(box.dimension()) + " axes, chart has " + std::to_string(d));
    if (nodes.size() != weights.size() || nodes.empty()) throw Error("quadrature needs one weight per node");
    double total = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].size() != d) throw Error("quadrature node has the wrong number of coordinates");
        for (std::size_t a = 0; a < d; ++a)
            if (!(nodes[i][a] >= box.lower(a) && nodes[i][a] <= box.upper(a)))
                throw Error("quadrature node " + std::to_string(i) + " lies outside the box");
        if (!(weights[i] > 0.0)) throw Error("quadrature weights must be positive");
        const CharacterVerdict v = check_character(pres, chart_point(*pres, nodes[i]));
        if (!v.valid()) throw Rejection(v.violation, "quadrature node " + std::to_string(i) + ": " + v.detail);
        total += weights[i];
    }
    if (std::abs(total - 1.0) > kQuadratureNormalization) {
        if (!rescale) throw Error("quadrature weights sum to " + std::to_string(total) + ", not 1 (use rescale)");
        for (double& w : weights) w /= total;
    }
    State s;
    s.kind_ = Kind::quadrature;
    s.pres_ = std::move(pres);
    s.name_ = std::move(density);
    s.support_ = std::move(box);
    s.nodes_ = std::move(nodes);
    s.weights_ = std::move(weights);
    return s;
}

State State::analytic(PresentationPtr pres, std::string name, MomentRule rule, bool densely_defined) {
    require_star(pres);
    if (!rule) throw Error("analytic state needs a moment rule");
    const auto one = rule(unit_monomial(pres->size()));
    if (!one || *one != 1) throw Error("analytic state must satisfy E(1) = 1");
    State s;
    s.kind_ = Kind::analytic;
    s.pres_ = std::move(pres);
    s.name_ = std::move(name);
    s.densely_defined_ = densely_defined;
    s.rule_ = std::move(rule);
    return s;
}

State State::gaussian(PresentationPtr pres, std::vector<std::size_t> generators) {
    require_star(pres);
    if (!pres->relations().empty()) throw Error("gaussian state needs a presentation without relations");
    if (generators.empty())
        for (std::size_t i = 0; i < pres->size(); ++i)
            if (!pres->is_follower(i)) generators.push_back(i);
    std::vector<bool> covered(pres->size(), false);
    for (std::size_t g : generators) {
        if (g >= pres->size()) throw Error("gaussian generator out of range");
        covered[g] = true;
        covered[pres->adjoint_of(g)] = true;
    }
    PresentationPtr p = pres;
    auto rule = [p, covered](const Monomial& m) -> std::optional<Rational> {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0 && !covered[i]) return std::nullopt;
        Rational r(1);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (p->is_follower(i)) continue;
            if (p->generator(i).link == AdjointLink::self) {
                r *= double_factorial_moment(m[i]);
                continue;
            }
            if (m[i] != m[p->generator(i).partner]) return Rational(0);
            r *= factorial(m[i]);
        }
        return r;
    };
    return analytic(std::move(pres), "gaussian", std::move(rule), true);
}

bool State::is_exact() const noexcept {
    switch (kind_) {
    case Kind::atomic:
        return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.character.is_exact(); });
    case Kind::quadrature:
        return false;
    case Kind::analytic:
        return true;
    }
    return false;
}

std::optional<Rational> State::moment(const Monomial& m) const {
    if (kind_ != Kind::analytic) throw Error("moment rule exists only for analytic states");
    return rule_(m);
}

State make_state(const StateSpec& spec, const PresentationPtr& pres, unsigned default_order) {
    switch (spec.kind) {
    case StateSpec::Kind::atomic: {
        std::vector<State::Atom> atoms;
        for (const AtomSpec& a : spec.atoms) atoms.push_back({validate_character(pres, a.assignment), a.weight});
        return State::atomic(pres, std::move(atoms), spec.rescale);
    }
    case StateSpec::Kind::gaussian:
        return State::gaussian(pres, spec.gaussian_generators);
    case StateSpec::Kind::density: {
        require_star(pres);
        const CompactBox box = CompactBox::from_intervals(spec.box);
        const unsigned order = spec.order.value_or(default_order);
        if (order == 0) throw Error("quadrature order must be at least 1");
        const std::size_t d = box.dimension();
        if (d != chart(*pres).size())
            throw Error("box has " + std::to_string(d) + " axes, chart has " + std::to_string(chart(*pres).size()));
        std::vector<QuadratureRule> rules;
        for (std::size_t a = 0; a < d; ++a) rules.push_back(density_rule(spec.density, order, box.lower(a), box.upper(a)));
        std::vector<std::vector<double>> nodes;
        std::vector<double> weights;
        std::vector<std::size_t> idx(d, 0);
        while (true) {
            std::vector<double> x(d);
            double w = 1.0;
            for (std::size_t a = 0; a < d; ++a) {
                x[a] = rules[a].nodes[idx[a]];
                w *= rules[a].weights[idx[a]];
            }
            nodes.push_back(std::move(x));
            weights.push_back(w);
            std::size_t a = d;
            while (a-- > 0) {
                if (++idx[a] < rules[a].nodes.size()) break;
                idx[a] = 0;
            }
            if (a == static_cast<std::size_t>(-1)) break;
        }
        return State::quadrature(pres, box, std::move(nodes), std::move(weights), spec.density, spec.rescale);
    }
    }
    throw Error("unknown state kind");
}

Number expect(const State& e, const StarPoly& a) {
    if (!structurally_equal(*a.presentation(), *e.presentation()))
        throw Error("polynomial and state live on different presentations");
    switch (e.kind()) {
    case State::Kind::atomic: {
        if (e.is_exact()) {
            ComplexRational acc(0);
            for (const auto& atom : e.atoms()) acc = acc + ComplexRational(atom.weight) * eval_exact(a, atom.character);
            return acc;
        }
        std::complex<double> acc(0.0, 0.0);
        for (const auto& atom : e.atoms()) acc += atom.weight.get_d() * eval_numeric(a, atom.character);
        return acc;
    }
    case State::Kind::quadrature: {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < e.nodes().size(); ++i)
            acc += e.weights()[i] * evaluate(a, chart_point(*e.presentation(), e.nodes()[i]));
        return acc;
    }
    case State::Kind::analytic: {
        ComplexRational acc(0);
        for (const auto& [m, c] : a.terms()) {
            const auto mom = e.moment(m);
            if (!mom)
                throw Error("moment rule of '" + e.name() + "' does not cover " +
                            format_monomial(*e.presentation(), m));
            acc = acc + c * ComplexRational(*mom);
        }
        return acc;
    }
    }
    throw Error("unknown state kind");
}

PositivityReport check_positivity(const State& e, std::size_t samples, std::uint64_t seed, unsigned max_degree,
                                  double tolerance) {
    PositivityReport r;
    std::mt19937_64 rng(seed);
    const PresentationPtr& pres = e.presentation();
    r.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
        const StarPoly a = random_poly(pres, rng, max_degree);
        const StarPoly b = random_poly(pres, rng, max_degree);
        const Number aa = expect(e, involute(a) * a);
        const Number bb = expect(e, involute(b) * b);
        const Number ab = expect(e, involute(a) * b);
        ++r.samples;
        r.min_value = std::min(r.min_value, to_complex(aa).real());
        bool positive = true;
        bool cs = true;
        if (is_exact(aa) && is_exact(bb) && is_exact(ab)) {
            const auto& xa = std::get<ComplexRational>(aa);
            const auto& xb = std::get<ComplexRational>(bb);
            positive = xa.is_real() && sgn(xa.real()) >= 0;
            cs = xb.is_real() && std::get<ComplexRational>(ab).norm() <= xa.real() * xb.real();
        } else {
            const double va = to_complex(aa).real();
            const double vb = to_complex(bb).real();
            positive = va >= -tolerance;
            const double rhs = va * vb;
            cs = std::norm(to_complex(ab)) <= rhs + tolerance * std::max(1.0, std::abs(rhs));
        }
        if ((!positive || !cs) && !r.witness)
            r.witness = positive ? format_poly(a) + "; " + format_poly(b) : format_poly(a);
        r.positive = r.positive && positive;
        r.cauchy_schwarz = r.cauchy_schwarz && cs;
    }
    if (samples == 0) r.min_value = 0.0;
    return r;
}

} // namespace gelfand
