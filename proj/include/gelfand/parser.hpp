#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gelfand/presentation.hpp"
#include "gelfand/star_poly.hpp"

namespace gelfand {

// Textual presentation language. Whitespace-insensitive, `#` starts a comment.
//
//   presentation := "algebra" IDENT ";" { genDecl | relDecl }
//   genDecl      := "generator" IDENT ("," IDENT)* ":" ("selfadjoint" | "free") ";"
//   relDecl      := "relation" polyExpr ";"
//   polyExpr     := ["+"|"-"] term (("+"|"-") term)*
//   term         := factor ("*" factor)*
//   factor       := atom ["^" NAT]
//   atom         := IDENT | "adj" "(" polyExpr ")" | RAT | RAT "i" | "(" polyExpr ")"
//
// RAT is an integer or a fraction `p/q`. Decimal literals are accepted only
// where values are data (characters, boxes, state weights), never in
// polynomials.

/// Whether a presentation is read as an algebra or a *-algebra is decided by
/// the caller; the text itself is the same.
PresentationPtr parse_presentation(std::string_view text, Mode mode,
                                   PresentationLimits limits = {});

StarPoly parse_poly(std::string_view text, const PresentationPtr& pres);

/// A closed complex expression such as `2.5`, `(1+2i)` or `-1/3`.
ComplexRational parse_value(std::string_view text);

/// Canonical rendering: graded-lex descending, every coefficient explicit,
/// e.g. "(1/2+3i)*x^2 - 1*x + 1". The zero polynomial prints as "0".
std::string format_poly(const StarPoly& p);
std::string format_terms(const Presentation& pres, const Terms& terms);
std::string format_monomial(const Presentation& pres, const Monomial& m);
std::string format_presentation(const Presentation& pres);

/// Generator index -> value. Accepts `char { x = 2.5 ; adj(z) = (1-2i) }` or
/// the bare list `x=2.5; z=(1+2i)`.
using Assignment = std::map<std::size_t, ComplexRational>;
Assignment parse_assignment(std::string_view text, const Presentation& pres);

/// Generator images for a morphism: `map { x = x^2 + 1 }` or `x = x^2 + 1`.
/// Left-hand sides name source generators; right-hand sides are polynomials
/// over the target. Unlisted adjoint partners get nullopt.
std::vector<std::optional<StarPoly>> parse_images(std::string_view text, const PresentationPtr& source,
                                                  const PresentationPtr& target);

/// `[-1,1] x [-1,1]`, one interval per axis.
using Interval = std::pair<Rational, Rational>;
std::vector<Interval> parse_box(std::string_view text);

struct AtomSpec {
    Assignment assignment;
    Rational weight;
};

/// Parsed `state ...` text; turned into a State by make_state.
///
///   state atomic [rescale] { (x=1): 1/2 ; (x=-1): 1/2 }
///   state gaussian(x)            # or `state gaussian` for every generator
///   state density "uniform" on [0,1] [order 16] [rescale]
struct StateSpec {
    enum class Kind { atomic, gaussian, density };
    Kind kind = Kind::atomic;
    std::vector<AtomSpec> atoms;
    std::vector<std::size_t> gaussian_generators;  // empty: every independent generator
    std::string density;
    std::vector<Interval> box;
    std::optional<unsigned> order;
    bool rescale = false;
};

StateSpec parse_state(std::string_view text, const Presentation& pres);

} // namespace gelfand
