#include "gelfand/morphism.hpp"

#include "gelfand/error.hpp"
#include "gelfand/parser.hpp"

namespace gelfand {

namespace {

StarPoly apply_terms(const Terms& terms, const std::vector<StarPoly>& images, const PresentationPtr& target) {
    StarPoly result(target);
    std::vector<std::vector<StarPoly>> powers(images.size());
    auto power = [&](std::size_t g, unsigned e) -> const StarPoly& {
        auto& cache = powers[g];
        if (cache.empty()) cache.push_back(StarPoly::constant(target, ComplexRational(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * images[g]);
        return cache[e];
    };
    for (const auto& [m, c] : terms) {
        StarPoly term = StarPoly::constant(target, c);
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] != 0) term *= power(g, m[g]);
        result += term;
    }
    return result;
}

} // namespace

Morphism::Morphism(PresentationPtr source, PresentationPtr target, std::vector<StarPoly> images, bool star)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), star_(star) {
    if (images_.size() != source_->size())
        throw Error("morphism needs one image per source generator (" + std::to_string(source_->size()) +
                    " expected, " + std::to_string(images_.size()) + " given)");
    for (StarPoly& img : images_) {
        if (same_algebra(*img.presentation(), *target_)) continue;
        if (!structurally_equal(*img.presentation(), *target_))
            throw Error("morphism image is not a polynomial over the target '" + target_->name() + "'");
        img = rebase(img, target_);
    }
    for (std::size_t k = 0; k < source_->relations().size(); ++k) {
        StarPoly mapped = apply_terms(source_->relations()[k], images_, target_);
        if (!mapped.is_zero())
            throw Error("relation " + std::to_string(k + 1) + " (" +
                        format_terms(*source_, source_->relations()[k]) + ") maps to " + format_poly(mapped) +
                        ", not 0");
    }
    if (star_) {
        StarHomCheck check = is_star_hom(*this);
        if (!check.is_star_hom)
            throw Error("morphism is not a *-homomorphism at generator '" +
                        source_->generator(*check.witness).name + "'");
    }
}

Morphism Morphism::identity(PresentationPtr pres) {
    std::vector<StarPoly> images;
    for (std::size_t i = 0; i < pres->size(); ++i) images.push_back(StarPoly::generator(pres, i));
    return Morphism(pres, pres, std::move(images), pres->is_star());
}

StarPoly Morphism::operator()(const StarPoly& a) const {
    if (!same_algebra(*a.presentation(), *source_))
        throw Error("polynomial is not over the morphism's source presentation");
    return apply_terms(a.terms(), images_, target_);
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
    if (!same_algebra(*inner.target(), *outer.source()))
        throw Error("morphisms are not composable: target of the first is not the source of the second");
    std::vector<StarPoly> images;
    for (const StarPoly& img : inner.images()) images.push_back(outer(rebase(img, outer.source())));
    return Morphism(inner.source(), outer.target(), std::move(images), outer.star() && inner.star());
}

StarHomCheck is_star_hom(const Morphism& f) {
    if (!f.source()->is_star() || !f.target()->is_star())
        throw Error("is_star_hom needs star-algebra source and target");
    for (std::size_t g = 0; g < f.source()->size(); ++g) {
        const std::size_t adj = f.source()->adjoint_of(g);
        if (!(involute(f.image(g)) == f.image(adj))) return {false, g};
    }
    return {};
}

Morphism underlying(const Morphism& f) {
    PresentationPtr src = f.source()->is_star() ? underlying(*f.source()) : f.source();
    PresentationPtr tgt = f.target()->is_star() ? underlying(*f.target()) : f.target();
    std::vector<StarPoly> images;
    for (const StarPoly& img : f.images()) images.push_back(rebase(img, tgt));
    return Morphism(src, tgt, std::move(images));
}

Morphism unit_inclusion(const PresentationPtr& algebra) {
    if (algebra->is_star()) throw Error("the adjunction unit is defined on algebra-mode presentations");
    PresentationPtr target = underlying(*free_star(*algebra));
    std::vector<StarPoly> images;
    for (std::size_t k = 0; k < algebra->size(); ++k) images.push_back(StarPoly::generator(target, 2 * k));
    return Morphism(algebra, target, std::move(images));
}

Morphism morphism_from_images(PresentationPtr source, PresentationPtr target,
                              const std::vector<std::optional<StarPoly>>& images) {
    if (images.size() != source->size()) throw Error("image count does not match the source generators");
    std::vector<StarPoly> full;
    for (std::size_t g = 0; g < images.size(); ++g) {
        if (images[g]) {
            full.push_back(*images[g]);
            continue;
        }
        if (!source->is_star() || !target->is_star())
            throw Error("no image given for generator '" + display_name(*source, g) + "'");
        const std::size_t partner = source->adjoint_of(g);
        if (!images[partner]) throw Error("no image given for generator '" + display_name(*source, g) + "'");
        full.push_back(involute(*images[partner]));
    }
    const bool star = source->is_star() && target->is_star();
    return Morphism(std::move(source), std::move(target), std::move(full), star);
}

Morphism extend_hom(const Morphism& f, const PresentationPtr& star_target) {
    if (f.source()->is_star()) throw Error("extend_hom expects a morphism out of an algebra-mode presentation");
    if (!star_target->is_star()) throw Error("extend_hom expects a star-algebra target");
    if (!structurally_equal(*f.target(), *underlying(*star_target)))
        throw Error("morphism target is not the underlying algebra of '" + star_target->name() + "'");
    PresentationPtr source = free_star(*f.source());
    std::vector<StarPoly> images;
    for (const StarPoly& img : f.images()) {
        StarPoly moved = rebase(img, star_target);
        StarPoly adj = involute(moved);
        images.push_back(std::move(moved));
        images.push_back(std::move(adj));
    }
    return Morphism(source, star_target, std::move(images), true);
}

} // namespace gelfand
