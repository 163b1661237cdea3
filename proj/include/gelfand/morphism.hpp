#pragma once

#include <optional>
#include <vector>

#include "gelfand/star_poly.hpp"

namespace gelfand {

/// Algebra homomorphism given by generator images. Unit preservation is
/// structural: the empty monomial always maps to 1.
class Morphism {
public:
    /// Validates that every source relation maps to zero in the target and,
    /// when `star` is set, that the assignment commutes with the involution.
    Morphism(PresentationPtr source, PresentationPtr target, std::vector<StarPoly> images, bool star = false);

    static Morphism identity(PresentationPtr pres);

    const PresentationPtr& source() const noexcept { return source_; }
    const PresentationPtr& target() const noexcept { return target_; }
    const std::vector<StarPoly>& images() const noexcept { return images_; }
    const StarPoly& image(std::size_t generator) const { return images_.at(generator); }
    bool star() const noexcept { return star_; }

    StarPoly operator()(const StarPoly& a) const;

private:
    PresentationPtr source_;
    PresentationPtr target_;
    std::vector<StarPoly> images_;
    bool star_ = false;
};

/// Morphism from parsed images (see parse_images). A missing image for an
/// adjoint partner g* is filled with involute(f(g)); the result is flagged as
/// a *-morphism when both sides are star presentations.
Morphism morphism_from_images(PresentationPtr source, PresentationPtr target,
                              const std::vector<std::optional<StarPoly>>& images);

/// outer ∘ inner.
Morphism compose(const Morphism& outer, const Morphism& inner);

struct StarHomCheck {
    bool is_star_hom = true;
    std::optional<std::size_t> witness;  // source generator where f(g*) != f(g)*
};

/// Checks involute(f(g)) == f(g*) on generators, which suffices by generation.
StarHomCheck is_star_hom(const Morphism& f);

/// U(f): the same generator assignment between underlying algebras.
Morphism underlying(const Morphism& f);

/// The adjunction unit ι_A: A -> U(F(A)), g ↦ g.
Morphism unit_inclusion(const PresentationPtr& algebra);

/// The unique *-homomorphism F(A) -> B restricting to f along ι_A.
/// `f` must map A into a presentation structurally equal to U(B).
Morphism extend_hom(const Morphism& f, const PresentationPtr& star_target);

} // namespace gelfand
