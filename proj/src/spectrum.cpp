#include "gelfand/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gelfand/error.hpp"

namespace gelfand {

struct CharacterAccess {
    template <typename V>
    static Character make(PresentationPtr pres, std::vector<V> values) {
        return Character(std::move(pres), std::move(values));
    }
};

namespace {

std::complex<double> ipow(std::complex<double> base, unsigned e) {
    std::complex<double> r(1.0, 0.0);
    while (e != 0) {
        if (e & 1u) r *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return r;
}

ComplexRational eval_terms_exact(const Terms& terms, const std::vector<ComplexRational>& v) {
    ComplexRational sum;
    for (const auto& [m, c] : terms) {
        ComplexRational t = c;
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] != 0) t *= pow(v[g], m[g]);
        sum += t;
    }
    return sum;
}

// value and the magnitude sum Σ|c m(p)| used to scale tolerances
std::pair<std::complex<double>, double> eval_terms_numeric(const Terms& terms,
                                                           const std::vector<std::complex<double>>& v) {
    std::complex<double> sum(0.0, 0.0);
    double scale = 0.0;
    for (const auto& [m, c] : terms) {
        std::complex<double> t = c.to_complex();
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] != 0) t *= ipow(v[g], m[g]);
        sum += t;
        scale += std::abs(t);
    }
    return {sum, scale};
}

CharacterVerdict reject(std::string violation, std::string detail) {
    CharacterVerdict v;
    v.violation = std::move(violation);
    v.detail = std::move(detail);
    return v;
}

std::string show(const std::complex<double>& z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

std::string arity_detail(const Presentation& pres, std::size_t got) {
    return "expected " + std::to_string(pres.size()) + " values, got " + std::to_string(got);
}

Character must(CharacterVerdict v) {
    if (!v.valid()) throw Rejection(v.violation, "not a character (" + v.violation + "): " + v.detail);
    return std::move(*v.character);
}

std::vector<std::size_t> independent_generators(const Presentation& pres) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pres.size(); ++i)
        if (!pres.is_follower(i)) out.push_back(i);
    return out;
}

bool selfadjoint(const Presentation& pres, std::size_t i) {
    return pres.generator(i).link == AdjointLink::self;
}

} // namespace

const std::vector<ComplexRational>& Character::exact_values() const {
    if (!is_exact()) throw Error("character holds floating values");
    return std::get<std::vector<ComplexRational>>(values_);
}

std::vector<std::complex<double>> Character::numeric_values() const {
    if (const auto* n = std::get_if<std::vector<std::complex<double>>>(&values_)) return *n;
    std::vector<std::complex<double>> out;
    for (const ComplexRational& q : exact_values()) out.push_back(q.to_complex());
    return out;
}

Number Character::value(std::size_t generator) const {
    if (is_exact()) return exact_values().at(generator);
    return std::get<std::vector<std::complex<double>>>(values_).at(generator);
}

bool operator==(const Character& a, const Character& b) {
    return same_algebra(*a.pres_, *b.pres_) && a.values_ == b.values_;
}

CharacterVerdict check_character(const PresentationPtr& pres, std::vector<ComplexRational> values) {
    if (values.size() != pres->size()) return reject("arity", arity_detail(*pres, values.size()));
    if (pres->is_star()) {
        for (std::size_t g = 0; g < values.size(); ++g) {
            const std::size_t adj = pres->adjoint_of(g);
            if (adj == g && !values[g].is_real())
                return reject("reality", pres->generator(g).name + " = " + to_string(values[g]) +
                                             " must be real for a self-adjoint generator");
            if (adj != g && !(values[adj] == values[g].conj()))
                return reject("conjugacy", display_name(*pres, adj) + " = " + to_string(values[adj]) +
                                               " is not the conjugate of " + pres->generator(g).name + " = " +
                                               to_string(values[g]));
        }
    }
    for (std::size_t k = 0; k < pres->relations().size(); ++k) {
        ComplexRational r = eval_terms_exact(pres->relations()[k], values);
        if (!r.is_zero())
            return reject("relation", "relation " + format_terms(*pres, pres->relations()[k]) + " evaluates to " +
                                          to_string(r));
    }
    CharacterVerdict ok;
    ok.character = CharacterAccess::make(pres, std::move(values));
    return ok;
}

CharacterVerdict check_character(const PresentationPtr& pres, std::vector<std::complex<double>> values,
                                 double tolerance) {
    if (values.size() != pres->size()) return reject("arity", arity_detail(*pres, values.size()));
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return reject("arity", "non-finite value");
    if (pres->is_star()) {
        for (std::size_t g = 0; g < values.size(); ++g) {
            const std::size_t adj = pres->adjoint_of(g);
            const double scale = std::max(1.0, std::abs(values[g]));
            if (adj == g && std::abs(values[g].imag()) > tolerance * scale)
                return reject("reality", pres->generator(g).name + " = " + show(values[g]) +
                                             " must be real for a self-adjoint generator");
            if (adj != g && std::abs(values[adj] - std::conj(values[g])) > tolerance * scale)
                return reject("conjugacy", display_name(*pres, adj) + " = " + show(values[adj]) +
                                               " is not the conjugate of " + pres->generator(g).name);
        }
    }
    for (std::size_t k = 0; k < pres->relations().size(); ++k) {
        auto [r, scale] = eval_terms_numeric(pres->relations()[k], values);
        if (std::abs(r) > tolerance * std::max(1.0, scale))
            return reject("relation", "relation " + format_terms(*pres, pres->relations()[k]) + " evaluates to " +
                                          show(r));
    }
    CharacterVerdict ok;
    ok.character = CharacterAccess::make(pres, std::move(values));
    return ok;
}

Character validate_character(const PresentationPtr& pres, std::vector<ComplexRational> values) {
    return must(check_character(pres, std::move(values)));
}

Character validate_character(const PresentationPtr& pres, std::vector<std::complex<double>> values,
                             double tolerance) {
    return must(check_character(pres, std::move(values), tolerance));
}

Character validate_character(const PresentationPtr& pres, const Assignment& assignment) {
    std::vector<ComplexRational> values(pres->size());
    for (std::size_t g = 0; g < pres->size(); ++g) {
        auto it = assignment.find(g);
        if (it == assignment.end())
            throw Error("character assigns no value to generator '" + display_name(*pres, g) + "'");
        values[g] = it->second;
    }
    return validate_character(pres, std::move(values));
}

Assignment complete_assignment(const Presentation& pres, Assignment assignment) {
    if (!pres.is_star()) return assignment;
    for (std::size_t g = 0; g < pres.size(); ++g) {
        if (assignment.count(g)) continue;
        auto partner = assignment.find(pres.adjoint_of(g));
        if (partner != assignment.end()) assignment.emplace(g, partner->second.conj());
    }
    return assignment;
}

ComplexRational eval_exact(const StarPoly& a, const Character& p) {
    if (!structurally_equal(*a.presentation(), *p.presentation()))
        throw Error("polynomial and character live on different presentations");
    return eval_terms_exact(a.terms(), p.exact_values());
}

std::complex<double> eval_numeric(const StarPoly& a, const Character& p) {
    if (!structurally_equal(*a.presentation(), *p.presentation()))
        throw Error("polynomial and character live on different presentations");
    return eval_terms_numeric(a.terms(), p.numeric_values()).first;
}

std::complex<double> evaluate(const StarPoly& a, const std::vector<std::complex<double>>& values) {
    if (values.size() != a.presentation()->size()) throw Error("wrong number of generator values");
    return eval_terms_numeric(a.terms(), values).first;
}

ComplexRational evaluate(const StarPoly& a, const std::vector<ComplexRational>& values) {
    if (values.size() != a.presentation()->size()) throw Error("wrong number of generator values");
    return eval_terms_exact(a.terms(), values);
}

Number gelfand_eval(const StarPoly& a, const Character& p) {
    if (p.is_exact()) return eval_exact(a, p);
    return eval_numeric(a, p);
}

Character pushforward(const Morphism& f, const Character& p) {
    if (!structurally_equal(*f.target(), *p.presentation()))
        throw Error("character is not on the morphism's target presentation");
    if (f.source()->is_star() && f.target()->is_star() && !is_star_hom(f).is_star_hom)
        throw Error("pushforward along a morphism that is not a *-homomorphism may leave the spectrum");
    const PresentationPtr& src = f.source();
    if (p.is_exact()) {
        std::vector<ComplexRational> values;
        for (const StarPoly& img : f.images()) values.push_back(eval_terms_exact(img.terms(), p.exact_values()));
        return validate_character(src, std::move(values));
    }
    std::vector<std::complex<double>> values;
    const auto pv = p.numeric_values();
    for (const StarPoly& img : f.images()) values.push_back(eval_terms_numeric(img.terms(), pv).first);
    return validate_character(src, std::move(values));
}

Character naturality_inclusion(const Character& p, const PresentationPtr& underlying_pres) {
    if (!p.presentation()->is_star()) throw Error("naturality inclusion starts from a star-algebra character");
    if (!structurally_equal(*underlying_pres, *underlying(*p.presentation())))
        throw Error("target is not the underlying algebra of the character's presentation");
    if (p.is_exact()) return validate_character(underlying_pres, p.exact_values());
    return validate_character(underlying_pres, p.numeric_values());
}

Character naturality_inclusion(const Character& p) {
    return naturality_inclusion(p, underlying(*p.presentation()));
}

Character extend_to_free_star(const Character& p, const PresentationPtr& free) {
    const Presentation& a = *p.presentation();
    if (a.is_star()) throw Error("extend_to_free_star starts from an algebra-mode character");
    if (!structurally_equal(*free, *free_star(a))) throw Error("target is not the free *-algebra of the source");
    if (p.is_exact()) {
        std::vector<ComplexRational> values;
        for (const ComplexRational& v : p.exact_values()) {
            values.push_back(v);
            values.push_back(v.conj());
        }
        return validate_character(free, std::move(values));
    }
    std::vector<std::complex<double>> values;
    for (const auto& v : p.numeric_values()) {
        values.push_back(v);
        values.push_back(std::conj(v));
    }
    return validate_character(free, std::move(values));
}

Character extend_to_free_star(const Character& p) {
    return extend_to_free_star(p, free_star(*p.presentation()));
}

Character restrict_from_free_star(const Character& p, const PresentationPtr& algebra) {
    if (!structurally_equal(*p.presentation(), *free_star(*algebra)))
        throw Error("character is not on the free *-algebra of '" + algebra->name() + "'");
    if (p.is_exact()) {
        std::vector<ComplexRational> values;
        for (std::size_t k = 0; k < algebra->size(); ++k) values.push_back(p.exact_values()[2 * k]);
        return validate_character(algebra, std::move(values));
    }
    std::vector<std::complex<double>> values;
    const auto pv = p.numeric_values();
    for (std::size_t k = 0; k < algebra->size(); ++k) values.push_back(pv[2 * k]);
    return validate_character(algebra, std::move(values));
}

std::vector<Axis> chart(const Presentation& pres) {
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < pres.size(); ++i) {
        if (pres.is_follower(i)) continue;
        axes.push_back({i, false});
        if (!selfadjoint(pres, i)) axes.push_back({i, true});
    }
    return axes;
}

std::vector<std::complex<double>> chart_point(const Presentation& pres, const std::vector<double>& coords) {
    const std::vector<Axis> axes = chart(pres);
    if (coords.size() != axes.size())
        throw Error("expected " + std::to_string(axes.size()) + " chart coordinates, got " +
                    std::to_string(coords.size()));
    std::vector<std::complex<double>> values(pres.size());
    for (std::size_t k = 0; k < axes.size(); ++k) {
        auto& v = values[axes[k].generator];
        v = axes[k].imaginary ? std::complex<double>(v.real(), coords[k]) : std::complex<double>(coords[k], v.imag());
    }
    for (std::size_t i = 0; i < pres.size(); ++i)
        if (pres.is_follower(i)) values[i] = std::conj(values[pres.generator(i).partner]);
    return values;
}

CompactBox::CompactBox(std::vector<std::pair<double, double>> axes) : axes_(std::move(axes)) {
    for (const auto& [lo, hi] : axes_) {
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw Error("box bounds must be finite");
        if (lo > hi) throw Error("box lower bound exceeds upper bound");
    }
}

CompactBox CompactBox::from_intervals(const std::vector<Interval>& intervals) {
    std::vector<std::pair<double, double>> axes;
    for (const auto& [lo, hi] : intervals) axes.emplace_back(lo.get_d(), hi.get_d());
    return CompactBox(std::move(axes));
}

double coefficient_bound(const StarPoly& a, const CompactBox& box) {
    const Presentation& pres = *a.presentation();
    const std::vector<Axis> axes = chart(pres);
    if (axes.size() != box.dimension())
        throw Error("box has " + std::to_string(box.dimension()) + " axes but the presentation's chart has " +
                    std::to_string(axes.size()));
    std::vector<double> re(pres.size(), 0.0);
    std::vector<double> im(pres.size(), 0.0);
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const double m = std::max(std::abs(box.lower(k)), std::abs(box.upper(k)));
        (axes[k].imaginary ? im : re)[axes[k].generator] = m;
    }
    std::vector<double> modulus(pres.size());
    for (std::size_t i = 0; i < pres.size(); ++i) {
        const std::size_t src = pres.is_follower(i) ? pres.generator(i).partner : i;
        modulus[i] = std::hypot(re[src], im[src]);
    }
    double bound = 0.0;
    for (const auto& [m, c] : a.terms()) {
        double t = std::hypot(c.real().get_d(), c.imag().get_d());
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] != 0) t *= std::pow(modulus[g], static_cast<double>(m[g]));
        bound += t;
    }
    return bound;
}

SampleSet::SampleSet(std::vector<Character> characters) : characters_(std::move(characters)) {
    for (const Character& c : characters_)
        if (!same_algebra(*c.presentation(), *characters_.front().presentation()))
            throw Error("sample set mixes characters of different presentations");
}

CompactnessVerdict relative_compactness_check(const CompactBox& box, const std::vector<StarPoly>& witnesses) {
    if (witnesses.empty()) throw Error("relative compactness check needs at least one witness");
    CompactnessVerdict v;
    v.relatively_compact = true;
    v.sampled = false;
    v.label = "relatively compact (box, certified bounds)";
    for (const StarPoly& w : witnesses) v.bounds.push_back({format_poly(w), coefficient_bound(w, box), false});
    return v;
}

CompactnessVerdict relative_compactness_check(const SampleSet& samples, const std::vector<StarPoly>& witnesses,
                                              double threshold) {
    if (witnesses.empty()) throw Error("relative compactness check needs at least one witness");
    CompactnessVerdict v;
    v.sampled = true;
    for (const StarPoly& w : witnesses) {
        double sup = 0.0;
        for (const Character& p : samples.characters()) sup = std::max(sup, std::abs(eval_numeric(w, p)));
        const bool exceeds = sup > threshold;
        v.bounds.push_back({format_poly(w), sup, exceeds});
        if (exceeds) v.relatively_compact = false;
    }
    v.label = v.relatively_compact ? "bounded on samples (at sampled resolution)"
                                   : "not relatively compact (at sampled resolution)";
    return v;
}

NilpotencyResult is_nilpotent(const StarPoly& a, unsigned degree_bound) {
    if (degree_bound < 1) throw Error("nilpotency degree bound must be at least 1");
    StarPoly power = a;
    for (unsigned n = 1; n <= degree_bound; ++n) {
        if (power.is_zero()) return {true, n};
        if (n < degree_bound) power *= a;
    }
    return {};
}

std::vector<Character> search_characters(const PresentationPtr& pres, const std::vector<ComplexRational>& candidates,
                                         std::size_t max_combinations) {
    const std::vector<std::size_t> free_gens = independent_generators(*pres);
    std::vector<std::vector<ComplexRational>> choices;
    std::size_t combos = 1;
    for (std::size_t g : free_gens) {
        std::vector<ComplexRational> opts;
        for (const ComplexRational& c : candidates)
            if (!pres->is_star() || !selfadjoint(*pres, g) || c.is_real()) opts.push_back(c);
        if (opts.empty()) return {};
        if (combos > max_combinations / opts.size())
            throw Error("candidate grid too large (more than " + std::to_string(max_combinations) + " assignments)");
        combos *= opts.size();
        choices.push_back(std::move(opts));
    }
    std::vector<Character> found;
    std::vector<std::size_t> odo(free_gens.size(), 0);
    for (std::size_t step = 0; step < combos; ++step) {
        std::vector<ComplexRational> values(pres->size());
        for (std::size_t k = 0; k < free_gens.size(); ++k) values[free_gens[k]] = choices[k][odo[k]];
        for (std::size_t i = 0; i < pres->size(); ++i)
            if (pres->is_follower(i)) values[i] = values[pres->generator(i).partner].conj();
        CharacterVerdict v = check_character(pres, std::move(values));
        if (v.valid()) found.push_back(std::move(*v.character));
        for (std::size_t k = 0; k < odo.size(); ++k) {
            if (++odo[k] < choices[k].size()) break;
            odo[k] = 0;
        }
    }
    return found;
}

CharacterSampler CharacterSampler::grid(PresentationPtr pres, const std::vector<ComplexRational>& candidates,
                                        std::uint64_t seed) {
    CharacterSampler s(pres, seed);
    s.pool_ = search_characters(pres, candidates);
    if (s.pool_.empty()) throw Error("no candidate assignment is a character of '" + pres->name() + "'");
    return s;
}

CharacterSampler CharacterSampler::random_rational(PresentationPtr pres, std::uint64_t seed, long max_numerator,
                                                   long max_denominator, std::size_t max_attempts) {
    if (max_numerator < 0 || max_denominator < 1) throw Error("invalid random rational range");
    CharacterSampler s(std::move(pres), seed);
    s.max_numerator_ = max_numerator;
    s.max_denominator_ = max_denominator;
    s.max_attempts_ = max_attempts;
    return s;
}

Character CharacterSampler::next() {
    if (!pool_.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
        return pool_[pick(rng_)];
    }
    std::uniform_int_distribution<long> num(-max_numerator_, max_numerator_);
    std::uniform_int_distribution<long> den(1, max_denominator_);
    auto draw = [&] { return Rational(num(rng_), den(rng_)); };
    for (std::size_t attempt = 0; attempt < max_attempts_; ++attempt) {
        std::vector<ComplexRational> values(pres_->size());
        for (std::size_t i = 0; i < pres_->size(); ++i) {
            if (pres_->is_follower(i)) continue;
            Rational re = draw();
            Rational im = (pres_->is_star() && selfadjoint(*pres_, i)) ? Rational(0) : draw();
            values[i] = ComplexRational(re, im);
        }
        for (std::size_t i = 0; i < pres_->size(); ++i)
            if (pres_->is_follower(i)) values[i] = values[pres_->generator(i).partner].conj();
        CharacterVerdict v = check_character(pres_, std::move(values));
        if (v.valid()) return std::move(*v.character);
    }
    throw Error("random sampling found no character of '" + pres_->name() + "' in " +
                std::to_string(max_attempts_) + " attempts; supply a candidate grid");
}

RadicalVerdict radical_vanishing_check(const StarPoly& a, CharacterSampler sampler, std::size_t n,
                                       unsigned nilpotency_bound) {
    if (!structurally_equal(*a.presentation(), *sampler.presentation()))
        throw Error("sampler and polynomial live on different presentations");
    RadicalVerdict v;
    for (std::size_t k = 0; k < n; ++k) {
        Character p = sampler.next();
        ++v.samples;
        Number value = gelfand_eval(a, p);
        const bool nonzero = is_exact(value) ? !std::get<ComplexRational>(value).is_zero()
                                             : std::abs(to_complex(value)) > kCharacterTolerance;
        if (nonzero) {
            v.consistent_with_radical = false;
            v.witness = std::move(p);
            v.witness_value = std::move(value);
            break;
        }
    }
    v.certificate = is_nilpotent(a, nilpotency_bound);
    if (!v.consistent_with_radical) {
        v.label = "not in radical (nonzero witness)";
    } else if (v.certificate.nilpotent) {
        v.label = "in radical (nilpotent, exponent " + std::to_string(v.certificate.exponent) + ")";
    } else {
        v.label = "consistent with radical membership (sampled)";
    }
    return v;
}

} // namespace gelfand
