#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gelfand/monomial.hpp"

namespace gelfand {

enum class Mode { algebra, star_algebra };

enum class AdjointLink {
    self,     // self-adjoint generator
    partner,  // one half of a free pair {g, adj(g)}
    none      // algebra mode: no involution
};

struct Generator {
    std::string name;
    AdjointLink link = AdjointLink::none;
    std::size_t partner = 0;  // index of the adjoint partner; itself when link == self
};

/// Oriented relation: `lead` rewrites to `tail`, every tail monomial smaller
/// than `lead` in graded-lex order.
struct RewriteRule {
    Monomial lead;
    Terms tail;
    std::size_t relation = 0;  // index into Presentation::relations()
};

struct PresentationLimits {
    std::size_t step_budget = 1'000'000;
    // 0 means 2 x the maximal relation degree
    unsigned critical_pair_degree = 0;
};

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

/// A finitely presented commutative algebra or *-algebra: generators with an
/// adjoint pairing plus relations oriented as rewrite rules. Immutable;
/// construction checks the pairing, bounded confluence, and (in star mode)
/// closure of the relations under the involution.
class Presentation {
public:
    static PresentationPtr create(std::string name, Mode mode, std::vector<Generator> generators,
                                  std::vector<Terms> relations, PresentationLimits limits = {});

    const std::string& name() const noexcept { return name_; }
    Mode mode() const noexcept { return mode_; }
    bool is_star() const noexcept { return mode_ == Mode::star_algebra; }
    std::size_t size() const noexcept { return generators_.size(); }
    const std::vector<Generator>& generators() const noexcept { return generators_; }
    const Generator& generator(std::size_t i) const { return generators_.at(i); }
    std::optional<std::size_t> find(const std::string& name) const;
    /// Index of adj(g); throws in algebra mode.
    std::size_t adjoint_of(std::size_t i) const;
    /// The second (implicitly introduced) half of a free pair.
    bool is_follower(std::size_t i) const;

    /// Relations in monic canonical form, in declaration order.
    const std::vector<Terms>& relations() const noexcept { return relations_; }
    const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
    const PresentationLimits& limits() const noexcept { return limits_; }

    bool is_irreducible(const Monomial& m) const;

    /// Rewrites to the unique normal form under the rules.
    Terms normalize(Terms raw) const;

    /// Conjugates coefficients and swaps each generator with its partner.
    /// The result is not normalized.
    Terms involute_raw(const Terms& terms) const;

private:
    Presentation() = default;
    void orient_relations();
    void check_confluence() const;
    void check_star_closure() const;

    std::string name_;
    Mode mode_ = Mode::algebra;
    std::vector<Generator> generators_;
    std::vector<Terms> relations_;
    std::vector<RewriteRule> rules_;
    PresentationLimits limits_;
};

/// Same mode, generator count, adjoint pairing and relations. Names are
/// ignored, so U(C[z,z*]) and C[z,w] compare equal.
bool structurally_equal(const Presentation& a, const Presentation& b);

/// Structural equality plus identical generator names; polynomials may move
/// freely between such presentations.
bool same_algebra(const Presentation& a, const Presentation& b);

/// The free commutative *-algebra F(A): every generator gains an adjoint
/// partner placed right after it, every relation is kept and its involute added.
PresentationPtr free_star(const Presentation& algebra);

/// The underlying algebra U(A): adjoint links erased, generators and
/// relations kept. Partner names become plain identifiers (`z_star`).
PresentationPtr underlying(const Presentation& star);

/// Convenience builders for the standard polynomial algebras.
PresentationPtr polynomial_algebra(std::string name, const std::vector<std::string>& generators);
PresentationPtr selfadjoint_algebra(std::string name, const std::vector<std::string>& generators);
/// C[z1, z1*, ...]: one free pair per name.
PresentationPtr free_pair_algebra(std::string name, const std::vector<std::string>& generators);

/// Printable name of generator i: `adj(z)` for followers in star mode.
std::string display_name(const Presentation& pres, std::size_t i);

} // namespace gelfand
