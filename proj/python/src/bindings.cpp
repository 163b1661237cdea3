#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "gelfand/approx.hpp"
#include "gelfand/error.hpp"
#include "gelfand/gns.hpp"

namespace py = pybind11;
using namespace gelfand;

namespace {

struct PyPresentation {
    PresentationPtr ptr;
};

py::object number_to_py(const Number& n) {
    if (const auto* q = std::get_if<ComplexRational>(&n)) return py::str(to_string(*q));
    return py::cast(std::get<std::complex<double>>(n));
}

Mode mode_of(const std::string& mode) {
    if (mode == "star") return Mode::star_algebra;
    if (mode == "algebra") return Mode::algebra;
    throw Error("unknown mode '" + mode + "' (algebra, star)");
}

std::vector<std::string> generator_names(const Presentation& p) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < p.size(); ++i) out.push_back(display_name(p, i));
    return out;
}

Character make_character(const PresentationPtr& pres, const std::string& text) {
    return validate_character(pres, complete_assignment(*pres, parse_assignment(text, *pres)));
}

CompactBox box_of(const std::vector<std::pair<double, double>>& box) { return CompactBox(box); }

State state_of(const PresentationPtr& pres, std::string text, unsigned order) {
    if (text.rfind("state", 0) != 0) text = "state " + text;
    return make_state(parse_state(text, *pres), pres, order);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact *-polynomial algebra, characters, Bernstein approximation and GNS models";

    auto& error = py::register_exception<Error>(m, "GelfandError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<Rejection>(m, "Rejection", error.ptr());

    py::class_<PyPresentation>(m, "Presentation")
        .def_static(
            "parse",
            [](const std::string& text, const std::string& mode) {
                return PyPresentation{parse_presentation(text, mode_of(mode))};
            },
            py::arg("text"), py::arg("mode") = "star")
        .def_property_readonly("name", [](const PyPresentation& p) { return p.ptr->name(); })
        .def_property_readonly("is_star", [](const PyPresentation& p) { return p.ptr->is_star(); })
        .def_property_readonly("generators", [](const PyPresentation& p) { return generator_names(*p.ptr); })
        .def("__len__", [](const PyPresentation& p) { return p.ptr->size(); })
        .def("__str__", [](const PyPresentation& p) { return format_presentation(*p.ptr); })
        .def("free_star", [](const PyPresentation& p) { return PyPresentation{free_star(*p.ptr)}; })
        .def("underlying", [](const PyPresentation& p) { return PyPresentation{underlying(*p.ptr)}; })
        .def("structurally_equal",
             [](const PyPresentation& a, const PyPresentation& b) { return structurally_equal(*a.ptr, *b.ptr); })
        .def("poly", [](const PyPresentation& p, const std::string& text) { return parse_poly(text, p.ptr); });

    py::class_<StarPoly>(m, "Poly")
        .def(py::init([](const PyPresentation& p, const std::string& text) { return parse_poly(text, p.ptr); }))
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__pow__", [](const StarPoly& a, unsigned n) { return pow(a, n); })
        .def("__str__", &format_poly)
        .def("__repr__", [](const StarPoly& a) { return "Poly('" + format_poly(a) + "')"; })
        .def("involute", [](const StarPoly& a) { return involute(a); })
        .def_property_readonly("degree", &StarPoly::degree)
        .def_property_readonly("is_zero", &StarPoly::is_zero)
        .def_property_readonly("presentation", [](const StarPoly& a) { return PyPresentation{a.presentation()}; })
        .def("terms", [](const StarPoly& a) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& [mono, c] : a.terms()) out.emplace_back(format_monomial(*a.presentation(), mono), to_string(c));
            return out;
        });

    py::class_<Character>(m, "Character")
        .def(py::init([](const PyPresentation& p, const std::string& text) { return make_character(p.ptr, text); }), py::arg("presentation"), py::arg("assignment"))
        .def("values", [](const Character& c) {
            std::vector<py::object> out;
            for (std::size_t g = 0; g < c.size(); ++g) out.push_back(number_to_py(c.value(g)));
            return out;
        })
        .def(py::self == py::self);

    m.def(
        "check_character",
        [](const PyPresentation& py_pres, const std::string& text) {
            const PresentationPtr& pres = py_pres.ptr;
            const Assignment a = complete_assignment(*pres, parse_assignment(text, *pres));
            std::vector<ComplexRational> values;
            for (std::size_t g = 0; g < pres->size(); ++g) {
                auto it = a.find(g);
                if (it == a.end()) throw Error("no value for generator '" + display_name(*pres, g) + "'");
                values.push_back(it->second);
            }
            CharacterVerdict v = check_character(pres, values);
            py::dict out;
            out["valid"] = v.valid();
            out["violation"] = v.violation;
            out["detail"] = v.detail;
            return out;
        },
        py::arg("presentation"), py::arg("assignment"));

    m.def("evaluate", [](const StarPoly& a, const Character& p) { return number_to_py(gelfand_eval(a, p)); });
    m.def("pushforward", [](const PyPresentation& source, const PyPresentation& target, const std::string& images,
                            const Character& p) {
        return pushforward(morphism_from_images(source.ptr, target.ptr, parse_images(images, source.ptr, target.ptr)),
                           p);
    });
    m.def(
        "is_nilpotent",
        [](const StarPoly& a, unsigned bound) {
            NilpotencyResult r = is_nilpotent(a, bound);
            return r.nilpotent ? py::object(py::int_(r.exponent)) : py::object(py::none());
        },
        py::arg("poly"), py::arg("degree_bound") = 8);

    m.def(
        "seminorm",
        [](const StarPoly& a, const std::vector<std::pair<double, double>>& box, unsigned resolution) {
            SeminormEstimate e = seminorm_on_box(a, box_of(box), resolution);
            return std::make_pair(e.lower, e.upper);
        },
        py::arg("poly"), py::arg("box"), py::arg("resolution") = 101);

    m.def(
        "bernstein",
        [](const std::string& target, unsigned degree, const std::vector<std::pair<double, double>>& box,
           unsigned resolution) {
            const CompactBox k = box_of(box);
            BernsteinReport r = bernstein_approx(TargetFunction::catalog(target, k.dimension()), k, degree, resolution);
            py::dict out;
            out["lower"] = r.error.lower;
            out["upper"] = r.error.upper;
            out["degree"] = degree;
            out["error"] = r.error.lower;
            out["polynomial"] = r.approximant.polynomial();
            return out;
        },
        py::arg("target"), py::arg("degree"), py::arg("box") = std::vector<std::pair<double, double>>{{0.0, 1.0}},
        py::arg("resolution") = kDefaultErrorResolution);

    m.def("wirtinger_dzbar", [](const StarPoly& a, const std::string& generator) {
        return wirtinger_dzbar(a, generator);
    });

    m.def(
        "expect",
        [](const PyPresentation& pres, const std::string& state, const StarPoly& a, unsigned order) {
            return number_to_py(expect(state_of(pres.ptr, state, order), a));
        },
        py::arg("presentation"), py::arg("state"), py::arg("poly"), py::arg("order") = 16);

    m.def(
        "gns",
        [](const PyPresentation& py_pres, const std::string& state, unsigned degree, unsigned order) {
            const PresentationPtr& pres = py_pres.ptr;
            State s = state_of(pres, state, order);
            GnsModel model = gns_model(s, degree);
            py::dict out;
            std::vector<std::string> monomials;
            for (const Monomial& mono : model.basis) monomials.push_back(format_monomial(*pres, mono));
            out["monomials"] = monomials;
            out["rank"] = model.rank();
            out["gram"] = Eigen::MatrixXcd(model.gram);
            out["orthonormal"] = Eigen::MatrixXcd(model.orthonormal);
            std::vector<std::string> nulls;
            if (model.exact_null_space)
                for (const ExactVector& v : *model.exact_null_space) nulls.push_back(format_poly(basis_polynomial(model, v)));
            out["null_space"] = nulls;
            py::dict mult;
            for (std::size_t g = 0; g < pres->size(); ++g)
                mult[py::str(display_name(*pres, g))] = Eigen::MatrixXcd(multiplication_operator(s, model, g).matrix);
            out["multiplication"] = mult;
            return out;
        },
        py::arg("presentation"), py::arg("state"), py::arg("degree"), py::arg("order") = 16);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
