#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "gelfand/morphism.hpp"
#include "gelfand/parser.hpp"

namespace gelfand {

/// A point of the Gel'fand spectrum: one complex value per generator,
/// adjoint partners included. Exact (rational) or double, never mixed.
/// Only obtainable through validation.
class Character {
public:
    const PresentationPtr& presentation() const noexcept { return pres_; }
    bool is_exact() const noexcept { return std::holds_alternative<std::vector<ComplexRational>>(values_); }
    std::size_t size() const noexcept { return pres_->size(); }

    /// Throws when the character is numeric.
    const std::vector<ComplexRational>& exact_values() const;
    std::vector<std::complex<double>> numeric_values() const;
    Number value(std::size_t generator) const;

    friend bool operator==(const Character& a, const Character& b);

private:
    friend struct CharacterAccess;
    Character(PresentationPtr pres, std::vector<ComplexRational> values)
        : pres_(std::move(pres)), values_(std::move(values)) {}
    Character(PresentationPtr pres, std::vector<std::complex<double>> values)
        : pres_(std::move(pres)), values_(std::move(values)) {}

    PresentationPtr pres_;
    std::variant<std::vector<ComplexRational>, std::vector<std::complex<double>>> values_;
};

/// Relations and conjugacy of floating characters are checked to this tolerance
/// (relative to the magnitude of the evaluated terms, floor 1).
inline constexpr double kCharacterTolerance = 1e-12;

struct CharacterVerdict {
    std::optional<Character> character;
    std::string violation;  // "", "arity", "reality", "conjugacy", "relation"
    std::string detail;

    bool valid() const noexcept { return character.has_value(); }
};

CharacterVerdict check_character(const PresentationPtr& pres, std::vector<ComplexRational> values);
CharacterVerdict check_character(const PresentationPtr& pres, std::vector<std::complex<double>> values,
                                 double tolerance = kCharacterTolerance);

/// As check_character, but throws Rejection(violation) on failure.
Character validate_character(const PresentationPtr& pres, std::vector<ComplexRational> values);
Character validate_character(const PresentationPtr& pres, std::vector<std::complex<double>> values,
                             double tolerance = kCharacterTolerance);
/// Every generator, adjoint partners included, must be assigned.
Character validate_character(const PresentationPtr& pres, const Assignment& assignment);

/// Fills unassigned adjoint partners with the conjugate of their partner's
/// value. Star presentations only; other assignments are returned unchanged.
Assignment complete_assignment(const Presentation& pres, Assignment assignment);

/// â(p). Exact when p is exact.
Number gelfand_eval(const StarPoly& a, const Character& p);
ComplexRational eval_exact(const StarPoly& a, const Character& p);
std::complex<double> eval_numeric(const StarPoly& a, const Character& p);
/// Raw substitution of generator values, no character validation.
std::complex<double> evaluate(const StarPoly& a, const std::vector<std::complex<double>>& values);
ComplexRational evaluate(const StarPoly& a, const std::vector<ComplexRational>& values);

/// Δ_f(p) = p ∘ f, a character of f's source. Star presentations on both
/// sides require f to be a *-homomorphism.
Character pushforward(const Morphism& f, const Character& p);

/// j_A: the same assignment read as a character of U(A).
Character naturality_inclusion(const Character& p);
Character naturality_inclusion(const Character& p, const PresentationPtr& underlying_pres);

/// Δ_A -> Δ_{F(A)}: extend by p(g*) = conj(p(g)).
Character extend_to_free_star(const Character& p, const PresentationPtr& free);
Character extend_to_free_star(const Character& p);
/// Δ_{F(A)} -> Δ_A: restrict to the original generators.
Character restrict_from_free_star(const Character& p, const PresentationPtr& algebra);

/// Real coordinates of characters: one axis per self-adjoint generator, a
/// (Re, Im) pair per free generator or free pair.
struct Axis {
    std::size_t generator;
    bool imaginary;
};
std::vector<Axis> chart(const Presentation& pres);
/// Generator values (partners included) at chart coordinates.
std::vector<std::complex<double>> chart_point(const Presentation& pres, const std::vector<double>& coords);

/// Axis-aligned box in chart coordinates.
class CompactBox {
public:
    explicit CompactBox(std::vector<std::pair<double, double>> axes);
    static CompactBox from_intervals(const std::vector<Interval>& intervals);

    std::size_t dimension() const noexcept { return axes_.size(); }
    const std::vector<std::pair<double, double>>& axes() const noexcept { return axes_; }
    double lower(std::size_t i) const { return axes_.at(i).first; }
    double upper(std::size_t i) const { return axes_.at(i).second; }

private:
    std::vector<std::pair<double, double>> axes_;
};

/// Certified sup bound of |â| on the box: Σ |c_m| · Π max|g|^e.
double coefficient_bound(const StarPoly& a, const CompactBox& box);

class SampleSet {
public:
    explicit SampleSet(std::vector<Character> characters);
    const std::vector<Character>& characters() const noexcept { return characters_; }

private:
    std::vector<Character> characters_;
};

inline constexpr double kUnboundednessThreshold = 1e9;

struct WitnessBound {
    std::string witness;
    double bound = 0.0;
    bool exceeds = false;
};

struct CompactnessVerdict {
    bool relatively_compact = true;
    bool sampled = false;
    std::string label;
    std::vector<WitnessBound> bounds;
};

CompactnessVerdict relative_compactness_check(const CompactBox& box, const std::vector<StarPoly>& witnesses);
CompactnessVerdict relative_compactness_check(const SampleSet& samples, const std::vector<StarPoly>& witnesses,
                                              double threshold = kUnboundednessThreshold);

struct NilpotencyResult {
    bool nilpotent = false;
    unsigned exponent = 0;  // least n with a^n = 0
};

NilpotencyResult is_nilpotent(const StarPoly& a, unsigned degree_bound);

/// Exhaustive search of a finite grid: each independent generator takes every
/// candidate (self-adjoint ones only the real candidates), adjoint partners
/// are conjugated, and the valid characters are returned.
std::vector<Character> search_characters(const PresentationPtr& pres, const std::vector<ComplexRational>& candidates,
                                         std::size_t max_combinations = 1'000'000);

/// Seeded source of valid exact characters. Copying a sampler copies its
/// random state, so a sampler passed by value replays deterministically.
class CharacterSampler {
public:
    /// Uniform over the valid characters found by search_characters.
    static CharacterSampler grid(PresentationPtr pres, const std::vector<ComplexRational>& candidates,
                                 std::uint64_t seed);
    /// Random rationals p/q (|p| <= max_numerator, 1 <= q <= max_denominator)
    /// per real coordinate, rejection-sampled against the relations.
    static CharacterSampler random_rational(PresentationPtr pres, std::uint64_t seed, long max_numerator = 20,
                                            long max_denominator = 8, std::size_t max_attempts = 1000);

    const PresentationPtr& presentation() const noexcept { return pres_; }
    Character next();

private:
    CharacterSampler(PresentationPtr pres, std::uint64_t seed) : pres_(std::move(pres)), rng_(seed) {}

    PresentationPtr pres_;
    std::mt19937_64 rng_;
    std::vector<Character> pool_;  // grid mode when non-empty
    long max_numerator_ = 20;
    long max_denominator_ = 8;
    std::size_t max_attempts_ = 1000;
};

struct RadicalVerdict {
    bool consistent_with_radical = true;
    std::string label;
    std::size_t samples = 0;
    std::optional<Character> witness;
    std::optional<Number> witness_value;
    NilpotencyResult certificate;  // exact sufficient condition
};

/// One-sided test: a nonzero â(p) proves a is outside the Gel'fand radical;
/// vanishing on all samples is only consistent with membership. Nilpotency
/// (up to `nilpotency_bound`) is reported as the exact certificate.
RadicalVerdict radical_vanishing_check(const StarPoly& a, CharacterSampler sampler, std::size_t n,
                                       unsigned nilpotency_bound = 8);

} // namespace gelfand
