#include <sstream>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "superplane/error.hpp"
#include "superplane/experiments.hpp"
#include "superplane/funcapprox.hpp"
#include "superplane/io.hpp"
#include "superplane/multipoly.hpp"
#include "superplane/network.hpp"
#include "superplane/report.hpp"
#include "superplane/synthesis.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
namespace sp = superplane;

namespace {

sp::MultiPoly poly_from_terms(std::size_t nvars, const std::vector<std::pair<sp::Exponents, double>>& terms) {
    sp::MultiPoly p(nvars);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

std::vector<std::pair<sp::Exponents, double>> poly_terms(const sp::MultiPoly& p) {
    return {p.terms().begin(), p.terms().end()};
}

sp::Trig parse_trig(const std::string& kind) {
    if (kind == "sin") return sp::Trig::Sin;
    if (kind == "cos") return sp::Trig::Cos;
    throw sp::UsageError("trig kind must be 'sin' or 'cos'");
}

sp::NetworkSpec make_network(std::size_t input_dim, const std::vector<std::pair<Eigen::MatrixXd, sp::Activation>>& layers) {
    std::vector<sp::LayerSpec> specs;
    for (const auto& [w, act] : layers) specs.push_back({w, act});
    return sp::NetworkSpec(input_dim, std::move(specs));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symbolic expansion and weight synthesis for polynomial-activation networks";
    m.attr("DEFAULT_DATA_DIR") = SUPERPLANE_DATA_DIR;

    auto& base = py::register_exception<sp::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<sp::DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<sp::ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<sp::NumericError>(m, "NumericError", base.ptr());
    py::register_exception<sp::UsageError>(m, "UsageError", base.ptr());
    py::register_exception<sp::ParseError>(m, "ParseError", base.ptr());
    py::register_exception<sp::StructuralError>(m, "StructuralError", base.ptr());

    // multipoly
    py::class_<sp::AffineForm>(m, "AffineForm")
        .def(py::init([](double c, std::vector<double> lin) { return sp::AffineForm{c, std::move(lin)}; }),
             "constant"_a, "linear"_a)
        .def_readwrite("constant", &sp::AffineForm::constant)
        .def_readwrite("linear", &sp::AffineForm::linear)
        .def("__call__", [](const sp::AffineForm& a, std::vector<double> x) { return a(x); });

    py::class_<sp::MultiPoly>(m, "MultiPoly")
        .def(py::init<std::size_t>(), "nvars"_a)
        .def(py::init(&poly_from_terms), "nvars"_a, "terms"_a)
        .def_static("constant", &sp::MultiPoly::constant, "nvars"_a, "value"_a)
        .def_static("variable", &sp::MultiPoly::variable, "nvars"_a, "index"_a)
        .def_property_readonly("nvars", &sp::MultiPoly::nvars)
        .def_property_readonly("degree", &sp::MultiPoly::degree)
        .def("terms", &poly_terms, "Terms in graded-lex order as (exponents, coefficient)")
        .def("coefficient", &sp::MultiPoly::coefficient, "exponents"_a)
        .def("__call__", [](const sp::MultiPoly& p, std::vector<double> x) { return sp::poly_eval(p, x); })
        .def("__len__", &sp::MultiPoly::size)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(float() * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("to_text", &sp::io::serialize_poly)
        .def_static("from_text", [](const std::string& t) { return sp::io::parse_poly(t); })
        .def("__repr__", [](const sp::MultiPoly& p) {
            return "<MultiPoly nvars=" + std::to_string(p.nvars()) + " terms=" + std::to_string(p.size()) + ">";
        });

    m.def("poly_add", &sp::poly_add);
    m.def("poly_mul", &sp::poly_mul);
    m.def("affine_power", &sp::affine_power, "a"_a, "k"_a);
    m.def("apply_univariate_to_affine", &sp::apply_univariate_to_affine, "phi"_a, "a"_a);
    m.def("poly_eval", [](const sp::MultiPoly& p, std::vector<double> x) { return sp::poly_eval(p, x); });
    m.def("truncate_degree", &sp::truncate_degree, "p"_a, "max_degree"_a);

    // funcapprox
    py::class_<sp::UniPoly>(m, "UniPoly")
        .def(py::init<std::vector<double>>(), "coeffs"_a)
        .def_property_readonly("coeffs", &sp::UniPoly::coeffs)
        .def_property_readonly("degree", &sp::UniPoly::degree)
        .def("__call__", &sp::UniPoly::operator())
        .def(py::self == py::self)
        .def("to_text", &sp::io::serialize_unipoly)
        .def_static("from_text", [](const std::string& t) { return sp::io::parse_unipoly(t); });

    py::class_<sp::Interval>(m, "Interval")
        .def(py::init([](double lo, double hi) { return sp::Interval{lo, hi}; }), "lo"_a, "hi"_a)
        .def_readwrite("lo", &sp::Interval::lo)
        .def_readwrite("hi", &sp::Interval::hi);

    py::class_<sp::SampledFunction>(m, "SampledFunction")
        .def(py::init<std::function<double(double)>, sp::Interval>(), "fn"_a, "domain"_a)
        .def("__call__", &sp::SampledFunction::operator());
    m.def("builtin_activation", [](const std::string& name, double lo, double hi) {
        return sp::builtin_activation(name, {lo, hi});
    }, "name"_a, "lo"_a, "hi"_a);

    py::class_<sp::FourierSeries>(m, "FourierSeries")
        .def(py::init<>())
        .def_readwrite("half_period", &sp::FourierSeries::half_period)
        .def_readwrite("a0", &sp::FourierSeries::a0)
        .def_readwrite("a", &sp::FourierSeries::a)
        .def_readwrite("b", &sp::FourierSeries::b);

    m.def("fourier_fit", &sp::fourier_fit, "f"_a, "half_period"_a, "length"_a, "panels"_a = sp::kDefaultPanels);
    m.def("fourier_eval", &sp::fourier_eval, "fs"_a, "x"_a);
    m.def("maclaurin_trig", [](const std::string& kind, unsigned terms) { return sp::maclaurin_trig(parse_trig(kind), terms); },
          "kind"_a, "terms"_a);
    m.def("maclaurin_terms_for", &sp::maclaurin_terms_for, "u_max"_a, "tolerance"_a = 1e-9);
    m.def("fourier_to_poly", py::overload_cast<const sp::FourierSeries&, unsigned>(&sp::fourier_to_poly), "fs"_a, "terms"_a);
    m.def("fourier_to_poly", py::overload_cast<const sp::FourierSeries&>(&sp::fourier_to_poly), "fs"_a);
    m.def("lsq_poly_fit", [](const sp::SampledFunction& f, double lo, double hi, unsigned degree, std::size_t gridpoints) {
        return sp::lsq_poly_fit(f, {lo, hi}, degree, gridpoints);
    }, "f"_a, "lo"_a, "hi"_a, "degree"_a, "gridpoints"_a);
    m.def("approx_error", [](const sp::SampledFunction& f, const sp::UniPoly& p, double lo, double hi, std::size_t gridpoints) {
        const auto e = sp::approx_error(f, p, {lo, hi}, gridpoints);
        return py::dict("max_abs"_a = e.max_abs, "rmse"_a = e.rmse);
    }, "f"_a, "p"_a, "lo"_a, "hi"_a, "gridpoints"_a);

    // network
    py::class_<sp::Activation>(m, "Activation")
        .def_static("identity", &sp::Activation::identity)
        .def_static("power", &sp::Activation::power, "k"_a)
        .def_static("poly", &sp::Activation::poly, "p"_a)
        .def_property_readonly("degree", &sp::Activation::degree)
        .def("__call__", &sp::Activation::operator());

    py::class_<sp::NetworkSpec>(m, "NetworkSpec")
        .def(py::init(&make_network), "input_dim"_a, "layers"_a,
             "layers: list of (weights, activation); weights is out x (1 + in) with the bias in column 0")
        .def_property_readonly("input_dim", &sp::NetworkSpec::input_dim)
        .def_property_readonly("output_dim", &sp::NetworkSpec::output_dim)
        .def_property_readonly("attainable_degree", &sp::NetworkSpec::attainable_degree)
        .def("weights", [](const sp::NetworkSpec& n, std::size_t l) { return n.layers().at(l).weights; }, "layer"_a)
        .def("flat_weights", &sp::NetworkSpec::flat_weights)
        .def("with_weights", [](const sp::NetworkSpec& n, std::vector<double> w) { return n.with_weights(w); })
        .def("to_json", &sp::io::serialize_network)
        .def_static("from_json", [](const std::string& t) { return sp::io::parse_network(t); })
        .def_static("load", [](const std::filesystem::path& p) { return sp::io::load_network(p); });

    py::class_<sp::Dataset>(m, "Dataset")
        .def(py::init<Eigen::MatrixXd, std::vector<double>>(), "X"_a, "y"_a)
        .def_readonly("X", &sp::Dataset::X)
        .def_readonly("y", &sp::Dataset::y)
        .def("to_csv", &sp::io::serialize_dataset)
        .def_static("from_csv", [](const std::string& t) { return sp::io::parse_dataset(t); });

    m.def("forward", [](const sp::NetworkSpec& n, std::vector<double> x) { return sp::forward(n, x); }, "net"_a, "x"_a);
    m.def("expand_network", &sp::expand_network, "net"_a);
    m.def("classify", [](const sp::NetworkSpec& n, std::vector<double> x) { return sp::classify(n, x); }, "net"_a, "x"_a);

    // synthesis
    py::enum_<sp::InitialGuess>(m, "InitialGuess")
        .value("Ones", sp::InitialGuess::Ones)
        .value("Given", sp::InitialGuess::Given)
        .value("RandomRestarts", sp::InitialGuess::RandomRestarts);
    py::enum_<sp::SolverMethod>(m, "SolverMethod")
        .value("Dogleg", sp::SolverMethod::Dogleg)
        .value("LevenbergMarquardt", sp::SolverMethod::LevenbergMarquardt);

    py::class_<sp::SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("max_iters", &sp::SolverConfig::max_iters)
        .def_readwrite("tol_residual", &sp::SolverConfig::tol_residual)
        .def_readwrite("initial", &sp::SolverConfig::initial)
        .def_readwrite("given", &sp::SolverConfig::given)
        .def_readwrite("restarts", &sp::SolverConfig::restarts)
        .def_readwrite("restart_scale", &sp::SolverConfig::restart_scale)
        .def_readwrite("seed", &sp::SolverConfig::seed)
        .def_readwrite("method", &sp::SolverConfig::method)
        .def_readwrite("damping", &sp::SolverConfig::damping)
        .def_readwrite("initial_radius", &sp::SolverConfig::initial_radius)
        .def_readwrite("fd_step", &sp::SolverConfig::fd_step);

    py::class_<sp::SolveReport>(m, "SolveReport")
        .def_readonly("converged", &sp::SolveReport::converged)
        .def_readonly("iterations", &sp::SolveReport::iterations)
        .def_readonly("final_residual_norm", &sp::SolveReport::final_residual_norm)
        .def_readonly("restarts_used", &sp::SolveReport::restarts_used);

    py::class_<sp::ResidualSystem>(m, "ResidualSystem")
        .def_property_readonly("arity", &sp::ResidualSystem::arity)
        .def_property_readonly("unknowns", &sp::ResidualSystem::unknowns)
        .def_property_readonly("description", &sp::ResidualSystem::description)
        .def("__call__", &sp::ResidualSystem::operator());

    m.def("target_sp_classification", &sp::target_sp_classification, "ds"_a, "label"_a);
    m.def("build_coefficient_system", &sp::build_coefficient_system, "arch"_a, "targets"_a);
    m.def("build_data_system", &sp::build_data_system, "arch"_a, "ds"_a);
    m.def("residual_jacobian", &sp::residual_jacobian, "sys"_a, "w"_a, "fd_step"_a = 1e-7);
    m.def("solve_system", [](const sp::ResidualSystem& sys, const sp::SolverConfig& cfg) {
        auto r = sp::solve_system(sys, cfg);
        return py::make_tuple(r.weights, r.report);
    }, "sys"_a, "cfg"_a = sp::SolverConfig{});
    m.def("compress_network", [](const sp::NetworkSpec& t, const sp::NetworkSpec& s, unsigned degree, const sp::SolverConfig& cfg) {
        auto r = sp::compress_network(t, s, degree, cfg);
        return py::make_tuple(r.student, r.report);
    }, "teacher"_a, "student_arch"_a, "degree"_a, "cfg"_a = sp::SolverConfig{});

    // experiments
    m.def("run_experiment", [](int id, const std::filesystem::path& data_dir, std::uint64_t seed, const std::string& format) {
        sp::experiments::ExperimentOptions opt;
        opt.data_dir = data_dir;
        opt.seed = seed;
        const auto doc = sp::experiments::run_experiment(id, opt);
        return py::make_tuple(doc.exit_status(),
                              sp::render(doc, format == "machine" ? sp::ReportFormat::Machine : sp::ReportFormat::Text));
    }, "id"_a, "data_dir"_a, "seed"_a = 0, "format"_a = "text");
}
