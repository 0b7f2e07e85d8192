// Python bindings. Scalars and fields cross the boundary as text in the scalar/field grammar.
#include "voa/algebra_lib.hpp"
#include "voa/identity.hpp"
#include "voa/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

namespace py = pybind11;
using namespace voa;

namespace {

using exactq::Rational;
using terms::Field;

std::optional<Rational> level_arg(const std::optional<std::string>& s) {
    if (!s) return std::nullopt;
    return Rational::parse(*s);
}

/// An algebra with a computation context and an expression evaluator, optionally at a fixed level.
class Algebra {
public:
    explicit Algebra(engine::AlgebraSpec spec) : spec_(std::move(spec)) { reset(); }

    static Algebra from_preset(const std::string& name) { return Algebra(algebra::preset(name)); }
    static Algebra from_file(const std::string& path) { return Algebra(algebra::load_algebra_file(path)); }
    static Algebra from_json(const std::string& text) { return Algebra(algebra::load_algebra(text)); }

    std::string name() const { return spec_.name(); }

    py::list generators() const {
        py::list out;
        for (const auto& d : spec_.gens().decls()) {
            py::dict g;
            g["name"] = d.name;
            g["parity"] = d.parity == terms::Parity::Odd ? "odd" : "even";
            g["weight"] = d.weight.str();
            g["charge"] = d.charge;
            out.append(g);
        }
        return out;
    }

    std::string field(const std::string& expr) { return print(ev_->eval(expr)); }

    std::string product(const std::string& a, const std::string& b, int n) {
        return print(ctx_->nth_product(ev_->eval(a), ev_->eval(b), n));
    }

    std::map<int, std::string> ope(const std::string& a, const std::string& b) {
        std::map<int, std::string> out;
        for (const auto& [n, f] : ctx_->ope(ev_->eval(a), ev_->eval(b)).poles) out[n] = print(f);
        return out;
    }

    std::pair<bool, std::string> verify(const std::string& expr) {
        auto r = lab::verify_identity(*ev_, expr);
        return {r.pass, print(r.residual)};
    }

    std::pair<bool, std::size_t> jacobi(const std::string& maxWeight) {
        auto rep = engine::check_jacobi(*ctx_, terms::Weight::parse(maxWeight));
        return {rep.ok(), rep.checked};
    }

    std::vector<std::string> enumerate(const std::string& weight, std::optional<int> charge, std::optional<int> modulus) {
        auto pred = lab::ChargePredicate::any();
        if (modulus) pred = lab::ChargePredicate::modulo(*modulus, charge.value_or(0));
        else if (charge) pred = lab::ChargePredicate::exact(*charge);
        std::vector<std::string> out;
        for (const auto& m : lab::enumerate_basis(spec_.gens(), terms::Weight::parse(weight), pred))
            out.push_back(terms::print_monomial(m, spec_.gens()));
        return out;
    }

    std::string central_charge(const std::string& expr) { return lab::central_charge(*ctx_, ev_->eval(expr)).str(); }

    py::object decouple(const std::string& target, const std::vector<std::string>& gens,
                        const std::optional<std::string>& level) {
        Field t = ev_->eval(target);
        std::vector<Field> gs;
        for (const auto& g : gens) gs.push_back(ev_->eval(g));
        auto mode = level ? lab::DecoupleMode::at(Rational::parse(*level)) : lab::DecoupleMode::symbolic();
        auto sol = lab::decouple(*ctx_, t, gs, mode);
        if (!sol) return py::none();
        lab::WordSpace space(*ctx_, gs);
        py::list terms;
        for (std::size_t i = 0; i < sol->words.size(); ++i)
            terms.append(py::make_tuple(sol->coefficients[i].str(), space.describe(sol->words[i], gens)));
        std::vector<std::string> exc;
        for (const auto& q : sol->exceptionalLevels) exc.push_back(q.str());
        py::dict d;
        d["terms"] = terms;
        d["exceptional_levels"] = exc;
        return d;
    }

    bool singular(const std::string& expr, const std::vector<std::string>& gens, const std::optional<std::string>& level) {
        std::vector<Field> gs;
        for (const auto& g : gens) gs.push_back(ev_->eval(g));
        return lab::singular_check(spec_, ev_->eval(expr), gs, level_arg(level)).singular;
    }

private:
    void reset() {
        ctx_ = std::make_unique<engine::Context>(spec_);
        ev_ = std::make_unique<lab::Evaluator>(*ctx_);
    }
    std::string print(const Field& f) const { return terms::print_field(f, spec_.gens()); }

    engine::AlgebraSpec spec_;
    std::unique_ptr<engine::Context> ctx_;
    std::unique_ptr<lab::Evaluator> ev_;
};

py::list run_suite(const std::string& name, bool timing) {
    auto r = suites::run_suite(name);
    py::module_ json = py::module_::import("json");
    py::list out;
    for (const auto& c : r.cases) out.append(json.attr("loads")(suites::case_json(r.id, c, timing)));
    out.append(json.attr("loads")(suites::summary_json(r)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_voa, m) {
    m.doc() = "Exact OPE computations in vertex operator superalgebras";
    m.attr("__version__") = suites::kVersion;

    // Translators run newest first, so bases are registered before derived types.
    py::register_exception<lab::LabError>(m, "LabError", PyExc_RuntimeError);
    py::register_exception<exactq::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<exactq::PoleError>(m, "PoleError", PyExc_ZeroDivisionError);
    py::register_exception<terms::UnknownName>(m, "UnknownName", PyExc_KeyError);
    py::register_exception<lab::UnknownField>(m, "UnknownField", PyExc_KeyError);
    py::register_exception<suites::UnknownSuite>(m, "UnknownSuite", PyExc_KeyError);

    m.def("normalize", [](const std::string& s) { return exactq::parse_scalar(s).str(); },
          "Canonical text of a scalar in Q(k).");
    m.def("evaluate", [](const std::string& s, const std::string& q) {
        return exactq::parse_scalar(s).evaluate_at(Rational::parse(q)).str();
    });
    m.def("rational_roots", [](const std::string& s) {
        auto v = exactq::parse_scalar(s);
        if (!v.is_polynomial()) throw py::value_error("not a polynomial in k");
        auto rep = exactq::rational_roots(v.numerator());
        std::vector<std::string> roots, residual;
        for (const auto& r : rep.roots) roots.push_back(r.str());
        for (const auto& p : rep.residual) residual.push_back(p.str());
        return py::make_tuple(roots, residual);
    });
    m.def("strong_gen_gf", [](int N, int l, int truncation) {
        auto gf = lab::strong_gen_gf(N, l, truncation);
        py::dict d;
        d["offset"] = gf.offset.str();
        d["coeffs"] = gf.coeffs;
        d["reduced"] = gf.reduced;
        return d;
    }, py::arg("N"), py::arg("l"), py::arg("truncation"));
    m.def("preset_names", &algebra::preset_names);
    m.def("suite_names", &suites::suite_names);
    m.def("run_suite", &run_suite, py::arg("name"), py::arg("timing") = false,
          "Case records followed by the summary record, as dicts.");

    py::class_<Algebra>(m, "Algebra")
        .def_static("preset", &Algebra::from_preset)
        .def_static("load", &Algebra::from_file)
        .def_static("from_json", &Algebra::from_json)
        .def_property_readonly("name", &Algebra::name)
        .def_property_readonly("generators", &Algebra::generators)
        .def("field", &Algebra::field, "Normal form of an expression.")
        .def("product", &Algebra::product, py::arg("a"), py::arg("b"), py::arg("n"))
        .def("ope", &Algebra::ope)
        .def("verify", &Algebra::verify, "(passes, residual) for an expression asserted to vanish.")
        .def("jacobi", &Algebra::jacobi, py::arg("max_weight"))
        .def("enumerate", &Algebra::enumerate, py::arg("weight"), py::arg("charge") = py::none(),
             py::arg("modulus") = py::none())
        .def("central_charge", &Algebra::central_charge)
        .def("decouple", &Algebra::decouple, py::arg("target"), py::arg("gens"), py::arg("level") = py::none())
        .def("singular", &Algebra::singular, py::arg("expr"), py::arg("gens"), py::arg("level") = py::none());
}
