#include "gelfand/parser.hpp"

#include <cctype>
#include <set>

#include "gelfand/error.hpp"

namespace gelfand {

namespace {

enum class Tok {
    ident, number, string,
    plus, minus, star, caret,
    lparen, rparen, lbrace, rbrace, lbracket, rbracket,
    semi, comma, colon, equals,
    end
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Rational value;
    bool imaginary = false;
    bool decimal = false;
    bool integral = false;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance();
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            t.kind = Tok::ident;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (digit(c) || (c == '.' && i + 1 < text.size() && digit(text[i + 1]))) {
            std::size_t j = i;
            while (j < text.size() && digit(text[j])) ++j;
            std::string whole(text.substr(i, j - i));
            std::string frac;
            std::string denom;
            if (j < text.size() && text[j] == '.' && j + 1 < text.size() && digit(text[j + 1])) {
                std::size_t k = j + 1;
                while (k < text.size() && digit(text[k])) ++k;
                frac = std::string(text.substr(j + 1, k - j - 1));
                j = k;
                t.decimal = true;
            } else if (j < text.size() && text[j] == '/' && j + 1 < text.size() && digit(text[j + 1])) {
                std::size_t k = j + 1;
                while (k < text.size() && digit(text[k])) ++k;
                denom = std::string(text.substr(j + 1, k - j - 1));
                j = k;
            }
            if (whole.empty()) whole = "0";
            if (t.decimal) {
                mpz_class num(whole + frac, 10);
                mpz_class den;
                mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
                t.value = Rational(num, den);
            } else if (!denom.empty()) {
                mpz_class den(denom, 10);
                if (den == 0) throw ParseError(line, col, "zero denominator in '" + whole + "/" + denom + "'");
                t.value = Rational(mpz_class(whole, 10), den);
            } else {
                t.value = Rational(mpz_class(whole, 10));
                t.integral = true;
            }
            t.value.canonicalize();
            if (j < text.size() && text[j] == 'i' && !(j + 1 < text.size() && ident_char(text[j + 1]))) {
                t.imaginary = true;
                t.integral = false;
                ++j;
            }
            t.kind = Tok::number;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"') throw ParseError(line, col, "unterminated string");
            t.kind = Tok::string;
            t.text = std::string(text.substr(i + 1, j - i - 1));
            advance(j - i + 1);
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '*': t.kind = Tok::star; break;
        case '^': t.kind = Tok::caret; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case '{': t.kind = Tok::lbrace; break;
        case '}': t.kind = Tok::rbrace; break;
        case '[': t.kind = Tok::lbracket; break;
        case ']': t.kind = Tok::rbracket; break;
        case ';': t.kind = Tok::semi; break;
        case ',': t.kind = Tok::comma; break;
        case ':': t.kind = Tok::colon; break;
        case '=': t.kind = Tok::equals; break;
        default:
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        t.text = std::string(1, c);
        advance();
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::end;
    end.text = "end of input";
    end.line = line;
    end.column = col;
    out.push_back(std::move(end));
    return out;
}

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words{"adj", "algebra", "generator", "relation", "selfadjoint", "free"};
    return words;
}

class Parser {
public:
    Parser(std::string_view text, bool allow_decimal) : tokens_(lex(text)), allow_decimal_(allow_decimal) {}

    const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_word(const char* word) const { return at(Tok::ident) && peek().text == word; }

    const Token& next() {
        const Token& t = peek();
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    bool accept(Tok kind) {
        if (!at(kind)) return false;
        next();
        return true;
    }

    bool accept_word(const char* word) {
        if (!at_word(word)) return false;
        next();
        return true;
    }

    const Token& expect(Tok kind, const std::string& what) {
        if (!at(kind)) fail(peek(), "expected " + what + ", found '" + peek().text + "'");
        return next();
    }

    void expect_word(const char* word) {
        if (!at_word(word)) fail(peek(), std::string("expected '") + word + "', found '" + peek().text + "'");
        next();
    }

    void expect_end() {
        if (!at(Tok::end)) fail(peek(), "unexpected '" + peek().text + "' after complete input");
    }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.column, msg);
    }

    StarPoly expr(const PresentationPtr& pres) {
        bool negate = false;
        if (accept(Tok::minus)) {
            negate = true;
        } else {
            accept(Tok::plus);
        }
        StarPoly acc = term(pres);
        if (negate) acc = -acc;
        while (at(Tok::plus) || at(Tok::minus)) {
            const bool minus = next().kind == Tok::minus;
            StarPoly rhs = term(pres);
            if (minus) {
                acc -= rhs;
            } else {
                acc += rhs;
            }
        }
        return acc;
    }

    Rational real_value() {
        const Token& start = peek();
        ComplexRational v = constant();
        if (!v.is_real()) fail(start, "expected a real value");
        return v.real();
    }

    ComplexRational constant() {
        StarPoly p = expr(constants());
        return p.coefficient(Monomial{});
    }

    std::size_t generator_ref(const Presentation& pres) {
        if (at_word("adj") && peek(1).kind == Tok::lparen) {
            const Token& adj = next();
            next();
            const Token& id = expect(Tok::ident, "generator name");
            auto idx = pres.find(id.text);
            if (!idx) fail(id, "unknown generator '" + id.text + "'");
            if (!pres.is_star()) fail(adj, "use of adj in algebra mode");
            expect(Tok::rparen, "')'");
            return pres.adjoint_of(*idx);
        }
        const Token& id = expect(Tok::ident, "generator name");
        auto idx = pres.find(id.text);
        if (!idx) fail(id, "unknown generator '" + id.text + "'");
        return *idx;
    }

    // items of an assignment up to (not including) `close`
    Assignment assignment_items(const Presentation& pres, Tok close) {
        Assignment out;
        while (!at(close)) {
            const Token& lhs = peek();
            const std::size_t g = generator_ref(pres);
            expect(Tok::equals, "'='");
            ComplexRational v = constant();
            if (!out.emplace(g, std::move(v)).second)
                fail(lhs, "generator '" + pres.generator(g).name + "' assigned twice");
            if (!accept(Tok::semi) && !accept(Tok::comma)) break;
        }
        return out;
    }

    Interval interval() {
        expect(Tok::lbracket, "'['");
        Rational lo = real_value();
        expect(Tok::comma, "','");
        Rational hi = real_value();
        const Token& close = expect(Tok::rbracket, "']'");
        if (lo > hi) fail(close, "interval lower bound exceeds upper bound");
        return {lo, hi};
    }

    std::vector<Interval> box() {
        std::vector<Interval> axes{interval()};
        while (at_word("x")) {
            next();
            axes.push_back(interval());
        }
        return axes;
    }

private:
    static const PresentationPtr& constants() {
        static const PresentationPtr empty =
            Presentation::create("", Mode::star_algebra, {}, {});
        return empty;
    }

    StarPoly term(const PresentationPtr& pres) {
        StarPoly acc = factor(pres);
        while (accept(Tok::star)) acc *= factor(pres);
        return acc;
    }

    StarPoly factor(const PresentationPtr& pres) {
        StarPoly base = atom(pres);
        if (accept(Tok::caret)) {
            const Token& e = expect(Tok::number, "exponent");
            if (!e.integral) fail(e, "exponent must be a natural number");
            if (e.value > 65536) fail(e, "exponent too large");
            base = pow(base, static_cast<unsigned>(e.value.get_num().get_ui()));
        }
        return base;
    }

    StarPoly atom(const PresentationPtr& pres) {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::number: {
            next();
            if (t.decimal && !allow_decimal_) fail(t, "floating literal not allowed in polynomial input");
            ComplexRational c = t.imaginary ? ComplexRational(Rational(0), t.value) : ComplexRational(t.value);
            return StarPoly::constant(pres, c);
        }
        case Tok::lparen: {
            next();
            StarPoly inner = expr(pres);
            expect(Tok::rparen, "')'");
            return inner;
        }
        case Tok::ident: {
            if (t.text == "adj") {
                next();
                if (!pres->is_star()) fail(t, "use of adj in algebra mode");
                expect(Tok::lparen, "'(' after adj");
                StarPoly inner = expr(pres);
                expect(Tok::rparen, "')'");
                return involute(inner);
            }
            next();
            auto idx = pres->find(t.text);
            if (!idx) fail(t, "unknown generator '" + t.text + "'");
            return StarPoly::generator(pres, *idx);
        }
        default:
            fail(t, "expected a generator, number or '(', found '" + t.text + "'");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool allow_decimal_;
};

} // namespace

PresentationPtr parse_presentation(std::string_view text, Mode mode, PresentationLimits limits) {
    Parser p(text, false);
    p.expect_word("algebra");
    const Token& name = p.expect(Tok::ident, "algebra name");
    p.expect(Tok::semi, "';'");

    std::vector<Generator> gens;
    std::set<std::string> names;

    // Relations may mention generators declared after them, so they are
    // collected as source slices and parsed once all generators are known.
    std::vector<std::size_t> line_starts{0};
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] == '\n') line_starts.push_back(i + 1);
    auto offset_of = [&](const Token& t) { return line_starts[t.line - 1] + t.column - 1; };
    struct PendingRelation {
        std::size_t begin;
        std::size_t end;
        std::size_t line;
        std::size_t column;
    };
    std::vector<PendingRelation> pending;

    while (!p.at(Tok::end)) {
        if (p.accept_word("generator")) {
            std::vector<Token> ids{p.expect(Tok::ident, "generator name")};
            while (p.accept(Tok::comma)) ids.push_back(p.expect(Tok::ident, "generator name"));
            p.expect(Tok::colon, "':'");
            const Token& kind = p.expect(Tok::ident, "'selfadjoint' or 'free'");
            if (kind.text != "selfadjoint" && kind.text != "free")
                Parser::fail(kind, "expected 'selfadjoint' or 'free', found '" + kind.text + "'");
            if (kind.text == "selfadjoint" && mode == Mode::algebra)
                Parser::fail(kind, "'selfadjoint' generators need star-algebra mode (no involution in algebra mode)");
            p.expect(Tok::semi, "';'");
            for (const Token& id : ids) {
                if (reserved_words().count(id.text) != 0) Parser::fail(id, "'" + id.text + "' is reserved");
                if (!names.insert(id.text).second) Parser::fail(id, "duplicate generator '" + id.text + "'");
                const std::size_t idx = gens.size();
                if (mode == Mode::algebra) {
                    gens.push_back({id.text, AdjointLink::none, 0});
                } else if (kind.text == "selfadjoint") {
                    gens.push_back({id.text, AdjointLink::self, idx});
                } else {
                    gens.push_back({id.text, AdjointLink::partner, idx + 1});
                    gens.push_back({"adj(" + id.text + ")", AdjointLink::partner, idx});
                }
            }
        } else if (p.accept_word("relation")) {
            const Token& first = p.peek();
            std::size_t depth = 0;
            while (!(p.at(Tok::semi) && depth == 0)) {
                if (p.at(Tok::end)) Parser::fail(p.peek(), "expected ';' after relation");
                if (p.at(Tok::lparen)) ++depth;
                if (p.at(Tok::rparen) && depth > 0) --depth;
                p.next();
            }
            const Token& semi = p.next();
            if (&first == &semi) Parser::fail(semi, "empty relation");
            pending.push_back({offset_of(first), offset_of(semi), first.line, first.column});
        } else {
            Parser::fail(p.peek(), "expected 'generator' or 'relation', found '" + p.peek().text + "'");
        }
    }

    PresentationPtr bare = Presentation::create(name.text, mode, gens, {}, limits);
    std::vector<Terms> relations;
    for (const PendingRelation& r : pending) {
        // Re-lex the slice with padding so diagnostics keep file positions.
        std::string slice(r.line - 1, '\n');
        slice.append(r.column - 1, ' ');
        slice.append(text.substr(r.begin, r.end - r.begin));
        Parser rp(slice, false);
        StarPoly rel = rp.expr(bare);
        rp.expect_end();
        relations.push_back(rel.terms());
    }
    return Presentation::create(name.text, mode, std::move(gens), std::move(relations), limits);
}

StarPoly parse_poly(std::string_view text, const PresentationPtr& pres) {
    Parser p(text, false);
    StarPoly out = p.expr(pres);
    p.expect_end();
    return out;
}

ComplexRational parse_value(std::string_view text) {
    Parser p(text, true);
    ComplexRational v = p.constant();
    p.expect_end();
    return v;
}

std::string format_monomial(const Presentation& pres, const Monomial& m) {
    std::string out;
    for (std::size_t g = 0; g < m.size(); ++g) {
        if (m[g] == 0) continue;
        if (!out.empty()) out += "*";
        out += display_name(pres, g);
        if (m[g] > 1) out += "^" + std::to_string(m[g]);
    }
    return out.empty() ? "1" : out;
}

std::string format_terms(const Presentation& pres, const Terms& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        std::string coef;
        if (first) {
            coef = to_string(c);
        } else if (c.is_real() && sgn(c.real()) < 0) {
            out += " - ";
            coef = to_string(-c);
        } else {
            out += " + ";
            coef = to_string(c);
        }
        out += coef;
        if (total_degree(m) != 0) out += "*" + format_monomial(pres, m);
        first = false;
    }
    return out;
}

std::string format_poly(const StarPoly& p) { return format_terms(*p.presentation(), p.terms()); }

std::string format_presentation(const Presentation& pres) {
    std::string out = "algebra " + pres.name() + ";\n";
    for (std::size_t i = 0; i < pres.size(); ++i) {
        const Generator& g = pres.generator(i);
        if (pres.is_follower(i)) continue;
        out += "generator " + g.name + " : " + (g.link == AdjointLink::self ? "selfadjoint" : "free") + ";\n";
    }
    for (const Terms& r : pres.relations()) out += "relation " + format_terms(pres, r) + ";\n";
    return out;
}

Assignment parse_assignment(std::string_view text, const Presentation& pres) {
    Parser p(text, true);
    const bool braced = p.accept_word("char");
    if (braced) p.expect(Tok::lbrace, "'{'");
    Assignment out = p.assignment_items(pres, braced ? Tok::rbrace : Tok::end);
    if (braced) p.expect(Tok::rbrace, "'}'");
    p.expect_end();
    return out;
}

std::vector<std::optional<StarPoly>> parse_images(std::string_view text, const PresentationPtr& source,
                                                  const PresentationPtr& target) {
    Parser p(text, false);
    const bool braced = p.accept_word("map");
    if (braced) p.expect(Tok::lbrace, "'{'");
    std::vector<std::optional<StarPoly>> images(source->size());
    const Tok close = braced ? Tok::rbrace : Tok::end;
    while (!p.at(close)) {
        const Token& lhs = p.peek();
        const std::size_t g = p.generator_ref(*source);
        p.expect(Tok::equals, "'='");
        if (images[g]) Parser::fail(lhs, "image of '" + source->generator(g).name + "' given twice");
        images[g] = p.expr(target);
        if (!p.accept(Tok::semi) && !p.accept(Tok::comma)) break;
    }
    if (braced) p.expect(Tok::rbrace, "'}'");
    p.expect_end();
    for (std::size_t g = 0; g < images.size(); ++g) {
        if (!images[g] && !source->is_follower(g))
            throw Error("no image given for generator '" + source->generator(g).name + "'");
    }
    return images;
}

std::vector<Interval> parse_box(std::string_view text) {
    Parser p(text, true);
    const bool braced = p.accept_word("box");
    if (braced) p.expect(Tok::lbrace, "'{'");
    std::vector<Interval> axes = p.box();
    if (braced) p.expect(Tok::rbrace, "'}'");
    p.expect_end();
    return axes;
}

StateSpec parse_state(std::string_view text, const Presentation& pres) {
    Parser p(text, true);
    p.expect_word("state");
    StateSpec spec;
    const Token& kind = p.expect(Tok::ident, "state kind");
    if (kind.text == "atomic") {
        spec.kind = StateSpec::Kind::atomic;
        spec.rescale = p.accept_word("rescale");
        p.expect(Tok::lbrace, "'{'");
        while (!p.at(Tok::rbrace)) {
            p.expect(Tok::lparen, "'(' opening a support point");
            AtomSpec atom;
            atom.assignment = p.assignment_items(pres, Tok::rparen);
            p.expect(Tok::rparen, "')'");
            p.expect(Tok::colon, "':'");
            atom.weight = p.real_value();
            spec.atoms.push_back(std::move(atom));
            if (!p.accept(Tok::semi)) break;
        }
        p.expect(Tok::rbrace, "'}'");
        if (p.accept_word("rescale")) spec.rescale = true;
    } else if (kind.text == "gaussian") {
        spec.kind = StateSpec::Kind::gaussian;
        if (p.accept(Tok::lparen)) {
            do {
                spec.gaussian_generators.push_back(p.generator_ref(pres));
            } while (p.accept(Tok::comma));
            p.expect(Tok::rparen, "')'");
        }
    } else if (kind.text == "density") {
        spec.kind = StateSpec::Kind::density;
        spec.density = p.expect(Tok::string, "quoted density name").text;
        p.expect_word("on");
        spec.box = p.box();
        while (p.at(Tok::ident)) {
            if (p.accept_word("order")) {
                const Token& n = p.expect(Tok::number, "quadrature order");
                if (!n.integral || n.value < 1 || n.value > 512) Parser::fail(n, "order must be an integer in 1..512");
                spec.order = static_cast<unsigned>(n.value.get_num().get_ui());
            } else if (p.accept_word("rescale")) {
                spec.rescale = true;
            } else {
                Parser::fail(p.peek(), "expected 'order' or 'rescale', found '" + p.peek().text + "'");
            }
        }
    } else {
        Parser::fail(kind, "unknown state kind '" + kind.text + "' (atomic, gaussian, density)");
    }
    p.accept(Tok::semi);
    p.expect_end();
    return spec;
}

} // namespace gelfand
