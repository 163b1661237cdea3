#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gelfand/parser.hpp"
#include "gelfand/spectrum.hpp"

namespace gelfand {

/// Quadrature weights must sum to 1 within this tolerance.
inline constexpr double kQuadratureNormalization = 1e-12;

/// A normalized positive functional on a star presentation, realized as a
/// measure on the spectrum (atomic or quadrature) or as a moment rule.
class State {
public:
    enum class Kind { atomic, quadrature, analytic };

    /// Exact moment of a monomial, nullopt when the rule does not cover it.
    using MomentRule = std::function<std::optional<Rational>(const Monomial&)>;

    struct Atom {
        Character character;
        Rational weight;
    };

    /// Weights must be positive and sum to exactly 1 unless `rescale`.
    static State atomic(PresentationPtr pres, std::vector<Atom> atoms, bool rescale = false);
    /// Nodes are chart coordinates and must lie in `box`; weights must be
    /// positive and sum to 1 within 1e-12 unless `rescale`.
    static State quadrature(PresentationPtr pres, CompactBox box, std::vector<std::vector<double>> nodes,
                            std::vector<double> weights, std::string density, bool rescale = false);
    static State analytic(PresentationPtr pres, std::string name, MomentRule rule, bool densely_defined);
    /// Standard Gaussian on the listed generators (all independent ones when
    /// empty): m_k = (k-1) m_{k-2} per self-adjoint axis, E[z^a z*^b] = δ_ab a!
    /// per free pair. Needs a relation-free presentation.
    static State gaussian(PresentationPtr pres, std::vector<std::size_t> generators = {});

    Kind kind() const noexcept { return kind_; }
    const PresentationPtr& presentation() const noexcept { return pres_; }
    const std::string& name() const noexcept { return name_; }
    bool densely_defined() const noexcept { return densely_defined_; }
    /// Supporting compact K with |E(a)| <= C |a|_K; absent for analytic states.
    const std::optional<CompactBox>& support() const noexcept { return support_; }
    double continuity_constant() const noexcept { return continuity_; }

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<std::vector<double>>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// True when expect returns exact values.
    bool is_exact() const noexcept;
    std::optional<Rational> moment(const Monomial& m) const;

private:
    State() = default;

    Kind kind_ = Kind::atomic;
    PresentationPtr pres_;
    std::string name_;
    bool densely_defined_ = false;
    std::optional<CompactBox> support_;
    double continuity_ = 1.0;
    std::vector<Atom> atoms_;
    std::vector<std::vector<double>> nodes_;
    std::vector<double> weights_;
    MomentRule rule_;
};

/// Density names accepted by make_state: "uniform", "triangular".
const std::vector<std::string>& density_names();

State make_state(const StateSpec& spec, const PresentationPtr& pres, unsigned default_order = 16);

/// E(a): exact for atomic rational and analytic states, double otherwise.
Number expect(const State& e, const StarPoly& a);

struct PositivityReport {
    std::size_t samples = 0;
    double min_value = 0.0;            // smallest E(a*a) seen
    bool positive = true;              // E(a*a) >= 0 (exact) or >= -tolerance
    bool cauchy_schwarz = true;        // |E(a*b)|^2 <= E(a*a) E(b*b)
    std::optional<std::string> witness;  // formatted a (or a; b) of the first failure
};

/// Draws `samples` seeded random pairs (a, b) of total degree <= max_degree and
/// checks positivity and Cauchy-Schwarz, exactly when the state is exact.
PositivityReport check_positivity(const State& e, std::size_t samples, std::uint64_t seed, unsigned max_degree = 3,
                                  double tolerance = 1e-10);

} // namespace gelfand
