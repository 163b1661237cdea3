#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "gelfand/approx.hpp"
#include "gelfand/error.hpp"
#include "gelfand/gns.hpp"

namespace gelfand::cli {

using json = nlohmann::ordered_json;

namespace {

struct Config {
    std::string command;
    std::string file;
    std::string target_file;
    std::string mode;
    std::string character;
    std::string grid;
    std::string poly;
    std::string box;
    std::string map;
    std::string state;
    std::string target;
    std::string generator;
    std::optional<unsigned> degree;
    std::optional<unsigned> resolution;
    std::optional<unsigned> order;
    std::optional<double> epsilon;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    double tolerance = 1e-10;
    bool json_output = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Mode mode_for(const std::string& path, const std::string& override_mode) {
    if (override_mode == "algebra") return Mode::algebra;
    if (override_mode == "star") return Mode::star_algebra;
    if (!override_mode.empty()) throw Error("unknown mode '" + override_mode + "' (algebra, star)");
    const bool alg = path.size() >= 4 && path.compare(path.size() - 4, 4, ".alg") == 0;
    return alg ? Mode::algebra : Mode::star_algebra;
}

PresentationPtr load(const std::string& path, const std::string& override_mode) {
    if (path.empty()) throw Error("a presentation file is required");
    try {
        return parse_presentation(read_file(path), mode_for(path, override_mode));
    } catch (const ParseError& e) {
        throw Error(path + ":" + e.what());
    }
}

json complex_json(std::complex<double> z) {
    if (z.imag() == 0.0) return z.real();
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json number_json(const Number& n) {
    if (const auto* q = std::get_if<ComplexRational>(&n)) return to_string(*q);
    return complex_json(std::get<std::complex<double>>(n));
}

std::string kind_name(const Presentation& pres, std::size_t i) {
    switch (pres.generator(i).link) {
    case AdjointLink::self:
        return "selfadjoint";
    case AdjointLink::partner:
        return pres.is_follower(i) ? "adjoint" : "free";
    case AdjointLink::none:
        return "free";
    }
    return "free";
}

json presentation_json(const Presentation& pres) {
    json gens = json::array();
    for (std::size_t i = 0; i < pres.size(); ++i)
        gens.push_back({{"name", display_name(pres, i)}, {"kind", kind_name(pres, i)}});
    json rels = json::array();
    for (const Terms& r : pres.relations()) rels.push_back(format_terms(pres, r));
    return {{"name", pres.name()},
            {"mode", pres.is_star() ? "star" : "algebra"},
            {"generators", gens},
            {"relations", rels},
            {"canonical", format_presentation(pres)}};
}

json character_json(const Character& c) {
    json out = json::object();
    for (std::size_t g = 0; g < c.size(); ++g) out[display_name(*c.presentation(), g)] = number_json(c.value(g));
    return out;
}

json box_json(const CompactBox& box) {
    json out = json::array();
    for (const auto& [lo, hi] : box.axes()) out.push_back(json::array({lo, hi}));
    return out;
}

std::vector<ComplexRational> assignment_values(const Presentation& pres, const Assignment& a) {
    std::vector<ComplexRational> values(pres.size());
    for (std::size_t g = 0; g < pres.size(); ++g) {
        auto it = a.find(g);
        if (it == a.end()) throw Error("character assigns no value to generator '" + display_name(pres, g) + "'");
        values[g] = it->second;
    }
    return values;
}

std::vector<ComplexRational> assignment_for(const Presentation& pres, const std::string& text) {
    if (text.empty()) throw Error("--char is required");
    return assignment_values(pres, complete_assignment(pres, parse_assignment(text, pres)));
}

Character character_for(const PresentationPtr& pres, const std::string& text) {
    return validate_character(pres, assignment_for(*pres, text));
}

StarPoly poly_for(const PresentationPtr& pres, const std::string& text) {
    if (text.empty()) throw Error("--poly is required");
    return parse_poly(text, pres);
}

CompactBox box_for(const std::string& text) {
    if (text.empty()) throw Error("--box is required");
    return CompactBox::from_intervals(parse_box(text));
}

std::vector<ComplexRational> grid_values(const std::string& text) {
    std::vector<ComplexRational> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) out.push_back(parse_value(item));
    if (out.empty()) throw Error("--grid needs at least one value");
    return out;
}

struct Report {
    json body = json::object();
    json echo = json::object();
    int code = kOk;
};

using Handler = std::function<void(const Config&, Report&)>;

void cmd_parse(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode);
    r.echo["presentation"] = format_presentation(*pres);
    r.body["presentation"] = presentation_json(*pres);
    if (!c.poly.empty()) {
        const std::string p = format_poly(parse_poly(c.poly, pres));
        r.echo["poly"] = p;
        r.body["poly"] = p;
    }
}

void cmd_free(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode.empty() ? "algebra" : c.mode);
    auto f = free_star(*pres);
    r.echo["presentation"] = format_presentation(*pres);
    r.body["generators"] = {{"before", pres->size()}, {"after", f->size()}};
    r.body["presentation"] = presentation_json(*f);
}

void cmd_underlying(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode.empty() ? "star" : c.mode);
    auto u = underlying(*pres);
    r.echo["presentation"] = format_presentation(*pres);
    r.body["generators"] = {{"before", pres->size()}, {"after", u->size()}};
    r.body["presentation"] = presentation_json(*u);
}

void cmd_spectrum_check(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode);
    r.echo["presentation"] = format_presentation(*pres);
    if (!c.grid.empty()) {
        const auto candidates = grid_values(c.grid);
        json echo_grid = json::array();
        for (const auto& v : candidates) echo_grid.push_back(to_string(v));
        r.echo["grid"] = echo_grid;
        json found = json::array();
        for (const Character& ch : search_characters(pres, candidates)) found.push_back(character_json(ch));
        r.body["count"] = found.size();
        r.body["characters"] = found;
        return;
    }
    const auto values = assignment_for(*pres, c.character);
    json echo_char = json::object();
    for (std::size_t g = 0; g < values.size(); ++g) echo_char[display_name(*pres, g)] = to_string(values[g]);
    r.echo["char"] = echo_char;
    CharacterVerdict v = check_character(pres, values);
    r.body["valid"] = v.valid();
    if (v.valid()) {
        r.body["character"] = character_json(*v.character);
        return;
    }
    r.body["violation"] = v.violation;
    r.body["detail"] = v.detail;
    r.code = kRejected;
}

void cmd_eval(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode);
    StarPoly a = poly_for(pres, c.poly);
    Character p = character_for(pres, c.character);
    r.echo["presentation"] = format_presentation(*pres);
    r.echo["poly"] = format_poly(a);
    r.echo["char"] = character_json(p);
    r.body["value"] = number_json(gelfand_eval(a, p));
}

void cmd_pushforward(const Config& c, Report& r) {
    auto source = load(c.file, c.mode);
    if (c.target_file.empty()) throw Error("--to (target presentation file) is required");
    auto target = load(c.target_file, c.mode);
    if (c.map.empty()) throw Error("--map is required");
    Morphism f = morphism_from_images(source, target, parse_images(c.map, source, target));
    Character p = character_for(target, c.character);
    json images = json::object();
    for (std::size_t g = 0; g < source->size(); ++g) images[display_name(*source, g)] = format_poly(f.image(g));
    r.echo["source"] = format_presentation(*source);
    r.echo["target"] = format_presentation(*target);
    r.echo["map"] = images;
    r.echo["char"] = character_json(p);
    r.body["star_hom"] = f.star();
    r.body["character"] = character_json(pushforward(f, p));
}

void cmd_nilpotent(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode);
    StarPoly a = poly_for(pres, c.poly);
    const unsigned bound = c.degree.value_or(8);
    r.echo["presentation"] = format_presentation(*pres);
    r.echo["poly"] = format_poly(a);
    r.echo["degree"] = bound;
    NilpotencyResult n = is_nilpotent(a, bound);
    r.body["nilpotent"] = n.nilpotent;
    r.body["exponent"] = n.nilpotent ? json(n.exponent) : json(nullptr);
    if (c.samples == 0) return;
    r.echo["samples"] = c.samples;
    r.echo["seed"] = c.seed;
    CharacterSampler sampler = c.grid.empty() ? CharacterSampler::random_rational(pres, c.seed)
                                              : CharacterSampler::grid(pres, grid_values(c.grid), c.seed);
    RadicalVerdict v = radical_vanishing_check(a, sampler, c.samples, bound);
    json rad = {{"consistent_with_radical", v.consistent_with_radical}, {"label", v.label}, {"samples", v.samples}};
    if (v.witness) {
        rad["witness"] = character_json(*v.witness);
        rad["witness_value"] = number_json(*v.witness_value);
    }
    r.body["radical"] = rad;
}

void cmd_seminorm(const Config& c, Report& r) {
    const CompactBox box = box_for(c.box);
    const unsigned res = c.resolution.value_or(101);
    r.echo["box"] = box_json(box);
    r.echo["resolution"] = res;
    std::optional<SeminormEstimate> est;
    if (!c.target.empty()) {
        r.echo["target"] = c.target;
        est = seminorm_on_box(TargetFunction::catalog(c.target, box.dimension()), box, res);
    } else {
        auto pres = load(c.file, c.mode);
        StarPoly a = poly_for(pres, c.poly);
        r.echo["presentation"] = format_presentation(*pres);
        r.echo["poly"] = format_poly(a);
        est = seminorm_on_box(a, box, res);
    }
    r.body["lower"] = est->lower;
    r.body["upper"] = est->upper;
    r.body["resolution"] = est->resolution;
}

void cmd_approx(const Config& c, Report& r) {
    const CompactBox box = c.box.empty() ? CompactBox({{0.0, 1.0}}) : box_for(c.box);
    if (c.target.empty()) throw Error("--target is required");
    const TargetFunction f = TargetFunction::catalog(c.target, box.dimension());
    const unsigned res = c.resolution.value_or(kDefaultErrorResolution);
    r.echo["target"] = c.target;
    r.echo["box"] = box_json(box);
    r.echo["resolution"] = res;
    if (c.epsilon) {
        const unsigned max_degree = c.degree.value_or(256);
        r.echo["epsilon"] = *c.epsilon;
        r.echo["degree"] = max_degree;
        DensityWitness w = density_witness(f, box, *c.epsilon, max_degree, res);
        r.body["epsilon"] = *c.epsilon;
        r.body["degree"] = w.degree ? json(*w.degree) : json(nullptr);
        r.body["error"] = w.error;
        r.body["found"] = w.degree.has_value();
        return;
    }
    const unsigned n = c.degree.value_or(16);
    r.echo["degree"] = n;
    BernsteinReport b = bernstein_approx(f, box, n, res);
    r.body["lower"] = b.error.lower;
    r.body["upper"] = b.error.upper;
    r.body["degree"] = n;
    r.body["error"] = b.error.lower;
    r.body["polynomial"] = format_poly(b.approximant.polynomial());
}

void cmd_wirtinger(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode);
    StarPoly a = poly_for(pres, c.poly);
    std::size_t pair = 0;
    if (c.generator.empty()) {
        pair = default_wirtinger_pair(*pres);
    } else {
        auto idx = pres->find(c.generator);
        if (!idx) throw Error("unknown generator '" + c.generator + "'");
        pair = *idx;
    }
    r.echo["presentation"] = format_presentation(*pres);
    r.echo["poly"] = format_poly(a);
    r.echo["generator"] = pres->generator(pair).name;
    StarPoly d = wirtinger_dzbar(a, pair);
    r.body["dzbar"] = format_poly(d);
    r.body["holomorphic"] = d.is_zero();
}

State state_for(const Config& c, const PresentationPtr& pres, Report& r) {
    if (c.state.empty()) throw Error("--state is required");
    std::string text = c.state;
    if (text.rfind("state", 0) != 0) text = "state " + text;
    const unsigned order = c.order.value_or(16);
    r.echo["state"] = text;
    r.echo["order"] = order;
    return make_state(parse_state(text, *pres), pres, order);
}

void cmd_state_check(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode);
    r.echo["presentation"] = format_presentation(*pres);
    State s = state_for(c, pres, r);
    static const char* kinds[] = {"atomic", "quadrature", "analytic"};
    r.body["kind"] = kinds[static_cast<int>(s.kind())];
    r.body["name"] = s.name();
    r.body["densely_defined"] = s.densely_defined();
    r.body["support"] = s.support() ? box_json(*s.support()) : json(nullptr);
    r.body["continuity_constant"] = s.support() ? json(s.continuity_constant()) : json(nullptr);
    r.body["normalization"] = number_json(expect(s, StarPoly::constant(pres, 1)));
    if (!c.poly.empty()) {
        StarPoly a = parse_poly(c.poly, pres);
        r.echo["poly"] = format_poly(a);
        r.body["expectation"] = number_json(expect(s, a));
    }
    const std::size_t samples = c.samples == 0 ? 500 : c.samples;
    const unsigned degree = c.degree.value_or(3);
    r.echo["samples"] = samples;
    r.echo["seed"] = c.seed;
    r.echo["degree"] = degree;
    r.echo["tolerance"] = c.tolerance;
    PositivityReport p = check_positivity(s, samples, c.seed, degree, c.tolerance);
    json pos = {{"samples", p.samples},
                {"min_value", p.min_value},
                {"positive", p.positive},
                {"cauchy_schwarz", p.cauchy_schwarz}};
    if (p.witness) pos["witness"] = *p.witness;
    r.body["positivity"] = pos;
    if (!p.positive || !p.cauchy_schwarz) r.code = kRejected;
}

json matrix_json(const Eigen::MatrixXcd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json exact_matrix_json(const ExactMatrix& m) {
    json out = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        out.push_back(r);
    }
    return out;
}

void cmd_gns(const Config& c, Report& r) {
    auto pres = load(c.file, c.mode);
    r.echo["presentation"] = format_presentation(*pres);
    State s = state_for(c, pres, r);
    const unsigned d = c.degree.value_or(6);
    r.echo["degree"] = d;
    GnsModel m = gns_model(s, d);

    json monomials = json::array();
    for (const Monomial& mono : m.basis) monomials.push_back(format_monomial(*pres, mono));
    r.body["degree"] = d;
    r.body["rank"] = m.rank();
    json ortho = json::array();
    for (Eigen::Index j = 0; j < m.orthonormal.cols(); ++j) {
        json col = json::array();
        for (Eigen::Index i = 0; i < m.orthonormal.rows(); ++i) col.push_back(complex_json(m.orthonormal(i, j)));
        ortho.push_back(col);
    }
    r.body["basis"] = {{"monomials", monomials}, {"orthonormal", ortho}};
    r.body["gram"] = m.exact_gram ? exact_matrix_json(*m.exact_gram) : matrix_json(m.gram);
    json nulls = json::array();
    if (m.exact_null_space) {
        for (const ExactVector& v : *m.exact_null_space) nulls.push_back(format_poly(basis_polynomial(m, v)));
    } else {
        for (const Eigen::VectorXcd& v : m.null_space) {
            json col = json::array();
            for (Eigen::Index i = 0; i < v.size(); ++i) col.push_back(complex_json(v(i)));
            nulls.push_back(col);
        }
    }
    r.body["null_space"] = nulls;
    json mult = json::object();
    for (std::size_t g = 0; g < pres->size(); ++g) {
        MultiplicationOperator op = multiplication_operator(s, m, g);
        json entry = {{"matrix", matrix_json(op.matrix)}, {"leakage", op.leakage}};
        if (op.exact) entry["exact"] = exact_matrix_json(*op.exact);
        mult[display_name(*pres, g)] = entry;
    }
    r.body["multiplication"] = mult;
}

void render_text(const json& report, std::ostream& out) {
    for (const auto& [key, value] : report.items()) {
        if (key == "inputs_digest") {
            out << "inputs_digest: " << value["fnv1a"].get<std::string>() << "\n";
            continue;
        }
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

void emit(const json& report, bool as_json, std::ostream& out) {
    if (as_json)
        out << report.dump(2) << "\n";
    else
        render_text(report, out);
}

} // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Exact and numeric experiments on finitely presented commutative *-algebras", "gelfand-lab"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::map<std::string, Handler> handlers{
        {"parse", cmd_parse},           {"free", cmd_free},
        {"underlying", cmd_underlying}, {"spectrum-check", cmd_spectrum_check},
        {"eval", cmd_eval},             {"pushforward", cmd_pushforward},
        {"nilpotent", cmd_nilpotent},   {"seminorm", cmd_seminorm},
        {"approx", cmd_approx},         {"wirtinger", cmd_wirtinger},
        {"state-check", cmd_state_check}, {"gns", cmd_gns}};
    const std::vector<std::pair<std::string, std::string>> descriptions{
        {"parse", "Parse a presentation (and optionally a polynomial) and print it canonically"},
        {"free", "Apply the free *-algebra functor F to an algebra presentation"},
        {"underlying", "Apply the underlying-algebra functor U to a *-algebra presentation"},
        {"spectrum-check", "Validate a character, or search a candidate grid for characters"},
        {"eval", "Evaluate the Gel'fand transform of a polynomial at a character"},
        {"pushforward", "Pull a character of the target back along a morphism"},
        {"nilpotent", "Nilpotency certificate and sampled radical test"},
        {"seminorm", "Bracket the sup-seminorm on a box"},
        {"approx", "Tensor Bernstein approximation of a catalog target"},
        {"wirtinger", "Wirtinger derivative with respect to an adjoint generator"},
        {"state-check", "Build a state and test normalization and positivity"},
        {"gns", "Truncated GNS model: Gram matrix, null space, orthonormal basis, operators"}};

    for (const auto& [name, help] : descriptions) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->callback([&c, name = name] { c.command = name; });
        const bool needs_file = name != "approx" && name != "seminorm";
        auto* file = sub->add_option("file", c.file, "Presentation file (.alg read as an algebra, else *-algebra)");
        if (needs_file) file->required();
        sub->add_option("--mode", c.mode, "Override the presentation mode")->check(CLI::IsMember({"algebra", "star"}));
        sub->add_flag("--json", c.json_output, "Emit a JSON report");
        sub->add_option("--char", c.character, "Character, e.g. \"x=2.5\" or \"char { z = (1+2i) }\"");
        sub->add_option("--poly", c.poly, "Polynomial over the presentation");
        sub->add_option("--grid", c.grid, "Comma-separated candidate values");
        sub->add_option("--box", c.box, "Box, e.g. \"[-1,1] x [0,2]\"");
        sub->add_option("--to", c.target_file, "Target presentation file (pushforward)");
        sub->add_option("--map", c.map, "Generator images, e.g. \"x = z + adj(z)\"");
        sub->add_option("--state", c.state, "State, e.g. \"gaussian\" or \"atomic { (x=1): 1 }\"");
        sub->add_option("--target", c.target, "Target function (abs-shift, exp, square, constant)");
        sub->add_option("--generator", c.generator, "Generator of the free pair (wirtinger)");
        sub->add_option("--degree", c.degree, "Degree bound");
        sub->add_option("--resolution", c.resolution, "Grid points per axis")->check(CLI::Range(2u, 100000000u));
        sub->add_option("--order", c.order, "Quadrature order")->check(CLI::Range(1u, 4096u));
        sub->add_option("--epsilon", c.epsilon, "Target error for a density witness (approx)");
        sub->add_option("--samples", c.samples, "Number of random samples");
        sub->add_option("--seed", c.seed, "Random seed");
        sub->add_option("--tolerance", c.tolerance, "Numeric tolerance for positivity checks");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    json report;
    report["schema"] = kSchema;
    report["command"] = c.command;
    Report r;
    try {
        handlers.at(c.command)(c, r);
    } catch (const Rejection& e) {
        report["status"] = "rejected";
        report["kind"] = e.kind();
        report["message"] = e.what();
        err << "rejected (" << e.kind() << "): " << e.what() << "\n";
        emit(report, c.json_output, out);
        return kRejected;
    } catch (const Error& e) {
        report["status"] = "error";
        report["message"] = e.what();
        err << "error: " << e.what() << "\n";
        emit(report, c.json_output, out);
        return kInvalid;
    }
    report["status"] = r.code == kOk ? "ok" : "rejected";
    for (const auto& [key, value] : r.body.items()) report[key] = value;
    json echo = {{"command", c.command}};
    for (const auto& [key, value] : r.echo.items()) echo[key] = value;
    report["inputs_digest"] = {{"echo", echo}, {"fnv1a", fnv1a_hex(echo.dump())}};
    emit(report, c.json_output, out);
    return r.code;
}

} // namespace gelfand::cli
