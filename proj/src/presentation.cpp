#include "gelfand/presentation.hpp"

#include <algorithm>
#include <set>

#include "gelfand/error.hpp"
#include "gelfand/parser.hpp"

namespace gelfand {

namespace {

Terms multiply_by_monomial(const Terms& terms, const Monomial& m) {
    Terms out;
    for (const auto& [mono, c] : terms) out.emplace(product(mono, m), c);
    return out;
}

} // namespace

PresentationPtr Presentation::create(std::string name, Mode mode, std::vector<Generator> generators,
                                     std::vector<Terms> relations, PresentationLimits limits) {
    std::shared_ptr<Presentation> p(new Presentation());
    p->name_ = std::move(name);
    p->mode_ = mode;
    p->limits_ = limits;

    const std::size_t n = generators.size();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i) {
        const Generator& g = generators[i];
        if (!seen.insert(g.name).second) throw Error("duplicate generator '" + g.name + "'");
        if (mode == Mode::algebra) {
            if (g.link == AdjointLink::self)
                throw Error("generator '" + g.name + "' declared selfadjoint in algebra mode");
            if (g.link == AdjointLink::partner)
                throw Error("generator '" + g.name + "' has an adjoint partner in algebra mode");
            continue;
        }
        switch (g.link) {
        case AdjointLink::none:
            throw Error("generator '" + g.name + "' has no adjoint link in star-algebra mode");
        case AdjointLink::self:
            if (g.partner != i) throw Error("self-adjoint generator '" + g.name + "' must be its own partner");
            break;
        case AdjointLink::partner:
            if (g.partner >= n || g.partner == i || generators[g.partner].link != AdjointLink::partner ||
                generators[g.partner].partner != i)
                throw Error("adjoint pairing of generator '" + g.name + "' is not an involution");
            break;
        }
    }
    p->generators_ = std::move(generators);

    for (Terms& r : relations) {
        for (const auto& [m, c] : r)
            if (m.size() != n) throw Error("relation monomial has wrong arity");
        std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
        if (r.empty()) continue;
        const ComplexRational lead_inv = r.begin()->second.inverse();
        for (auto& [m, c] : r) c *= lead_inv;
        if (total_degree(r.begin()->first) == 0)
            throw Error("relation reduces to a nonzero constant; the presented algebra is trivial");
        p->relations_.push_back(std::move(r));
    }
    p->orient_relations();
    p->check_confluence();
    if (p->is_star()) p->check_star_closure();
    return p;
}

void Presentation::orient_relations() {
    rules_.clear();
    for (std::size_t k = 0; k < relations_.size(); ++k) {
        const Terms& r = relations_[k];
        RewriteRule rule;
        rule.lead = r.begin()->first;
        rule.relation = k;
        for (auto it = std::next(r.begin()); it != r.end(); ++it) rule.tail.emplace(it->first, -it->second);
        rules_.push_back(std::move(rule));
    }
}

void Presentation::check_confluence() const {
    unsigned bound = limits_.critical_pair_degree;
    if (bound == 0) {
        for (const RewriteRule& r : rules_) bound = std::max(bound, 2 * total_degree(r.lead));
    }
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t j = i + 1; j < rules_.size(); ++j) {
            const RewriteRule& a = rules_[i];
            const RewriteRule& b = rules_[j];
            // coprime leading monomials always resolve
            if (coprime(a.lead, b.lead)) continue;
            const Monomial l = lcm(a.lead, b.lead);
            if (total_degree(l) > bound) continue;
            Terms via_a = normalize(multiply_by_monomial(a.tail, quotient(l, a.lead)));
            Terms via_b = normalize(multiply_by_monomial(b.tail, quotient(l, b.lead)));
            if (via_a != via_b) {
                throw Error("relations " + std::to_string(a.relation + 1) + " and " +
                            std::to_string(b.relation + 1) + " are not confluent: " +
                            format_terms(*this, Terms{{l, ComplexRational(1)}}) + " rewrites to both " +
                            format_terms(*this, via_a) + " and " + format_terms(*this, via_b));
            }
        }
    }
}

void Presentation::check_star_closure() const {
    for (std::size_t k = 0; k < relations_.size(); ++k) {
        Terms inv = normalize(involute_raw(relations_[k]));
        if (!inv.empty()) {
            throw Error("relations are not closed under the involution: adj(" +
                        format_terms(*this, relations_[k]) + ") reduces to " + format_terms(*this, inv));
        }
    }
}

std::optional<std::size_t> Presentation::find(const std::string& name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Presentation::adjoint_of(std::size_t i) const {
    if (!is_star()) throw Error("no involution on underlying algebra");
    return generators_.at(i).partner;
}

bool Presentation::is_follower(std::size_t i) const {
    const Generator& g = generators_.at(i);
    return g.link == AdjointLink::partner && g.partner < i;
}

bool Presentation::is_irreducible(const Monomial& m) const {
    return std::none_of(rules_.begin(), rules_.end(),
                        [&](const RewriteRule& r) { return divides(r.lead, m); });
}

Terms Presentation::normalize(Terms raw) const {
    Terms result;
    std::erase_if(raw, [](const auto& kv) { return kv.second.is_zero(); });
    if (rules_.empty()) return raw;

    std::size_t steps = 0;
    // Terms are consumed from the largest monomial down; every rewrite only
    // produces strictly smaller monomials, so `result` never sees a duplicate.
    while (!raw.empty()) {
        auto node = raw.extract(raw.begin());
        const Monomial& m = node.key();
        const RewriteRule* rule = nullptr;
        for (const RewriteRule& r : rules_) {
            if (divides(r.lead, m)) {
                rule = &r;
                break;
            }
        }
        if (rule == nullptr) {
            result.insert(std::move(node));
            continue;
        }
        if (++steps > limits_.step_budget) {
            throw Error("rewriting exceeded the step budget of " + std::to_string(limits_.step_budget) +
                        " while applying relation " + std::to_string(rule->relation + 1) + " (" +
                        format_terms(*this, relations_[rule->relation]) + ")");
        }
        const Monomial q = quotient(m, rule->lead);
        for (const auto& [tm, tc] : rule->tail) add_term(raw, product(q, tm), node.mapped() * tc);
    }
    return result;
}

Terms Presentation::involute_raw(const Terms& terms) const {
    if (!is_star()) throw Error("no involution on underlying algebra");
    Terms out;
    for (const auto& [m, c] : terms) {
        Monomial swapped(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) swapped[generators_[i].partner] = m[i];
        out.emplace(std::move(swapped), c.conj());
    }
    return out;
}

bool structurally_equal(const Presentation& a, const Presentation& b) {
    if (a.mode() != b.mode() || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Generator& ga = a.generator(i);
        const Generator& gb = b.generator(i);
        if (ga.link != gb.link) return false;
        if (ga.link != AdjointLink::none && ga.partner != gb.partner) return false;
    }
    return a.relations() == b.relations();
}

bool same_algebra(const Presentation& a, const Presentation& b) {
    if (&a == &b) return true;
    if (!structurally_equal(a, b)) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.generator(i).name != b.generator(i).name) return false;
    return true;
}

PresentationPtr free_star(const Presentation& algebra) {
    if (algebra.is_star()) throw Error("free_star expects an algebra-mode presentation");
    const std::size_t n = algebra.size();
    std::vector<Generator> gens;
    gens.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::string& name = algebra.generator(k).name;
        gens.push_back({name, AdjointLink::partner, 2 * k + 1});
        gens.push_back({"adj(" + name + ")", AdjointLink::partner, 2 * k});
    }
    std::vector<Terms> relations;
    for (const Terms& r : algebra.relations()) {
        Terms kept;
        Terms involuted;
        for (const auto& [m, c] : r) {
            Monomial a(2 * n, 0);
            Monomial b(2 * n, 0);
            for (std::size_t k = 0; k < n; ++k) {
                a[2 * k] = m[k];
                b[2 * k + 1] = m[k];
            }
            kept.emplace(std::move(a), c);
            involuted.emplace(std::move(b), c.conj());
        }
        relations.push_back(std::move(kept));
        relations.push_back(std::move(involuted));
    }
    return Presentation::create(algebra.name(), Mode::star_algebra, std::move(gens), std::move(relations),
                                algebra.limits());
}

PresentationPtr underlying(const Presentation& star) {
    if (!star.is_star()) throw Error("underlying expects a star-algebra presentation");
    std::set<std::string> taken;
    for (const Generator& g : star.generators()) taken.insert(g.name);
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < star.size(); ++i) {
        std::string name = star.generator(i).name;
        if (star.is_follower(i)) {
            name = star.generator(star.generator(i).partner).name + "_star";
            while (taken.count(name) != 0) name += "_";
            taken.insert(name);
        }
        gens.push_back({std::move(name), AdjointLink::none, 0});
    }
    return Presentation::create(star.name(), Mode::algebra, std::move(gens), star.relations(), star.limits());
}

PresentationPtr polynomial_algebra(std::string name, const std::vector<std::string>& generators) {
    std::vector<Generator> gens;
    for (const std::string& g : generators) gens.push_back({g, AdjointLink::none, 0});
    return Presentation::create(std::move(name), Mode::algebra, std::move(gens), {});
}

PresentationPtr selfadjoint_algebra(std::string name, const std::vector<std::string>& generators) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < generators.size(); ++i) gens.push_back({generators[i], AdjointLink::self, i});
    return Presentation::create(std::move(name), Mode::star_algebra, std::move(gens), {});
}

PresentationPtr free_pair_algebra(std::string name, const std::vector<std::string>& generators) {
    return free_star(*polynomial_algebra(std::move(name), generators));
}

std::string display_name(const Presentation& pres, std::size_t i) { return pres.generator(i).name; }

} // namespace gelfand
