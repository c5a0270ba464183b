// superplane: polynomial expansion, activation approximation and weight
// synthesis for small feedforward networks.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage or input error.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "superplane/error.hpp"
#include "superplane/experiments.hpp"
#include "superplane/funcapprox.hpp"
#include "superplane/io.hpp"
#include "superplane/report.hpp"
#include "superplane/synthesis.hpp"

namespace sp = superplane;
namespace fs = std::filesystem;

namespace {

struct SolverFlags {
    std::uint64_t seed = 0;
    std::size_t max_iters = 500;
    double tol = 1e-10;
    std::size_t restarts = 16;
    std::string method = "dogleg";
    std::string initial = "ones";
    bool trace = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Seed for random restarts");
        cmd->add_option("--max-iters", max_iters, "Iteration cap per attempt")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", tol, "Residual infinity-norm tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--restarts", restarts, "Random restarts after the first start fails");
        cmd->add_option("--method", method, "Solver: dogleg or lm")->check(CLI::IsMember({"dogleg", "lm"}));
        cmd->add_option("--initial", initial, "Start: ones, random, or given (weights stored in the architecture)")
            ->check(CLI::IsMember({"ones", "random", "given"}));
        cmd->add_flag("--trace", trace, "Per-iteration solver trace on stderr");
    }

    sp::SolverConfig config(const sp::NetworkSpec& arch) const {
        sp::SolverConfig cfg;
        cfg.seed = seed;
        cfg.max_iters = max_iters;
        cfg.tol_residual = tol;
        cfg.restarts = restarts;
        cfg.method = method == "lm" ? sp::SolverMethod::LevenbergMarquardt : sp::SolverMethod::Dogleg;
        if (initial == "random") {
            cfg.initial = sp::InitialGuess::RandomRestarts;
            cfg.restarts = std::max<std::size_t>(restarts, 1);
        } else if (initial == "given") {
            cfg.initial = sp::InitialGuess::Given;
            cfg.given = arch.flat_weights();
        }
        cfg.trace = trace ? &std::cerr : nullptr;
        return cfg;
    }
};

sp::ReportFormat parse_format(const std::string& f) {
    return f == "machine" ? sp::ReportFormat::Machine : sp::ReportFormat::Text;
}

int emit(const sp::ReportDocument& doc, const std::string& format) {
    std::cout << sp::render(doc, parse_format(format));
    return doc.exit_status();
}

void report_solve(sp::ReportSection& s, const sp::SolveReport& r, double tol) {
    s.equal("converged", "solver converged", r.converged ? 1.0 : 0.0, 1.0);
    s.at_most("residual_inf", "residual inf-norm", r.final_residual_norm, tol);
    s.info("iterations", "iterations", std::to_string(r.iterations));
    s.info("restarts", "random restarts used", std::to_string(r.restarts_used));
}

fs::path indexed_path(const fs::path& base, std::size_t k, std::size_t count) {
    if (count == 1) return base;
    fs::path p = base;
    p.replace_filename(base.stem().string() + "_" + std::to_string(k) + base.extension().string());
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic expansion and weight synthesis for polynomial-activation networks"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Report format: text or machine")->check(CLI::IsMember({"text", "machine"}));

    // approx
    auto* approx = app.add_subcommand("approx", "Polynomial surrogate of an activation function");
    std::string fn = "sigmoid";
    std::vector<double> interval{-8.0, 8.0};
    std::size_t fourier_n = sp::kDefaultFourierLength;
    std::string method = "fourier";
    unsigned degree = 9;
    unsigned terms = 0;
    std::size_t panels = sp::kDefaultPanels;
    std::size_t grid = 1001;
    std::string approx_out;
    approx->add_option("--fn", fn, "sigmoid, tanh, relu or square")->check(CLI::IsMember({"sigmoid", "tanh", "relu", "square"}));
    approx->add_option("--interval", interval, "lo hi")->expected(2);
    approx->add_option("--fourier-n", fourier_n, "Fourier series length N")->check(CLI::PositiveNumber);
    approx->add_option("--method", method, "fourier or lsq")->check(CLI::IsMember({"fourier", "lsq"}));
    approx->add_option("--degree", degree, "Least-squares degree");
    approx->add_option("--terms", terms, "Maclaurin terms (default: remainder bound)");
    approx->add_option("--panels", panels, "Simpson panels")->check(CLI::PositiveNumber);
    approx->add_option("--grid", grid, "Grid points for fitting and error")->check(CLI::Range(2ul, 100000000ul));
    approx->add_option("--out", approx_out, "Write the polynomial as a unipoly line");

    // expand
    auto* expand = app.add_subcommand("expand", "Expand a network into one polynomial per output");
    std::string net_path;
    std::string expand_out;
    int truncate = -1;
    expand->add_option("--net", net_path, "Network file")->required()->check(CLI::ExistingFile);
    expand->add_option("--out", expand_out, "Output polynomial file (suffixed _k for several outputs)");
    expand->add_option("--degree", truncate, "Drop terms above this total degree");

    // synth
    auto* synth = app.add_subcommand("synth", "Solve for weights whose expansion matches target polynomials");
    std::string arch_path;
    std::vector<std::string> target_paths;
    std::string synth_out;
    SolverFlags synth_flags;
    synth->add_option("--arch", arch_path, "Architecture file")->required()->check(CLI::ExistingFile);
    synth->add_option("--targets", target_paths, "One polynomial file per output")->required()->check(CLI::ExistingFile);
    synth->add_option("--out", synth_out, "Write the solved network");
    synth_flags.attach(synth);

    // fit-data
    auto* fit = app.add_subcommand("fit-data", "Solve for weights reproducing a regression dataset");
    std::string data_path;
    std::string fit_out;
    SolverFlags fit_flags;
    fit->add_option("--arch", arch_path, "Single-output architecture file")->required()->check(CLI::ExistingFile);
    fit->add_option("--data", data_path, "Dataset CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--out", fit_out, "Write the solved network");
    fit_flags.attach(fit);

    // compress
    auto* compress = app.add_subcommand("compress", "Fit a smaller student to a teacher's truncated expansion");
    std::string teacher_path;
    std::string student_path;
    unsigned compress_degree = 2;
    std::string compress_out;
    SolverFlags compress_flags;
    compress->add_option("--teacher", teacher_path, "Teacher network")->required()->check(CLI::ExistingFile);
    compress->add_option("--student-arch", student_path, "Student architecture")->required()->check(CLI::ExistingFile);
    compress->add_option("--degree", compress_degree, "Truncation degree")->required();
    compress->add_option("--out", compress_out, "Write the student network");
    compress_flags.attach(compress);

    // verify-exp1..4
    std::vector<CLI::App*> verify;
    std::string data_dir = SUPERPLANE_DATA_DIR;
    std::uint64_t verify_seed = 0;
    bool verify_trace = false;
    for (int id = 1; id <= 4; ++id) {
        auto* v = app.add_subcommand("verify-exp" + std::to_string(id), "Reproduce experiment " + std::to_string(id));
        v->add_option("--data-dir", data_dir, "Directory with the published weights and dataset")
            ->check(CLI::ExistingDirectory);
        v->add_option("--seed", verify_seed, "Seed for random restarts");
        v->add_flag("--trace", verify_trace, "Per-iteration solver trace on stderr");
        verify.push_back(v);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*approx) {
            if (interval[0] >= interval[1]) throw sp::UsageError("--interval needs lo < hi");
            const sp::Interval iv{interval[0], interval[1]};
            const auto f = sp::builtin_activation(fn, iv);
            sp::ReportDocument doc;
            auto& s = doc.add_section("approx " + fn + " on [" + sp::io::format_real(iv.lo) + ", " +
                                          sp::io::format_real(iv.hi) + "] (" + method + ")",
                                      "approx");
            sp::UniPoly poly;
            if (method == "fourier") {
                if (std::abs(iv.lo + iv.hi) > 1e-12 * iv.width()) {
                    throw sp::UsageError("the Fourier method needs a symmetric interval [-l, l]");
                }
                const auto series = sp::fourier_fit(f, iv.hi, fourier_n, panels);
                const unsigned k = terms > 0 ? terms
                                             : sp::maclaurin_terms_for(static_cast<double>(fourier_n) * 3.141592653589793);
                s.info("fourier.constant", "constant term a0/2", sp::io::format_real(0.5 * series.a0));
                s.info("maclaurin.terms", "Maclaurin terms", std::to_string(k));
                const auto ferr = [&] {
                    double worst = 0.0;
                    for (double x : sp::uniform_grid(iv, grid)) worst = std::max(worst, std::abs(sp::fourier_eval(series, x) - f(x)));
                    return worst;
                }();
                s.info("fourier.max_abs", "Fourier series max error", sp::io::format_real(ferr));
                poly = sp::fourier_to_poly(series, k);
            } else {
                poly = sp::lsq_poly_fit(f, iv, degree, grid);
            }
            const auto err = sp::approx_error(f, poly, iv, grid);
            s.info("degree", "polynomial degree", std::to_string(poly.degree()));
            s.info("max_abs", "polynomial max error", sp::io::format_real(err.max_abs));
            s.info("rmse", "polynomial rmse", sp::io::format_real(err.rmse));
            for (std::size_t i = 0; i < poly.coeffs().size(); ++i) {
                s.info("coeff." + std::to_string(i), "c" + std::to_string(i), sp::io::format_real(poly.coeffs()[i]));
            }
            if (!approx_out.empty()) {
                sp::io::write_file(approx_out, sp::io::serialize_unipoly(poly));
            }
            return emit(doc, format);
        }

        if (*expand) {
            const auto net = sp::io::load_network(net_path);
            auto polys = sp::expand_network(net);
            if (truncate >= 0) {
                for (auto& p : polys) p = sp::truncate_degree(p, static_cast<unsigned>(truncate));
            }
            if (expand_out.empty()) {
                for (const auto& p : polys) std::cout << sp::io::serialize_poly(p);
            } else {
                for (std::size_t k = 0; k < polys.size(); ++k) {
                    sp::io::write_file(indexed_path(expand_out, k, polys.size()), sp::io::serialize_poly(polys[k]));
                }
            }
            return 0;
        }

        if (*synth) {
            const auto arch = sp::io::load_network(arch_path);
            std::vector<sp::MultiPoly> targets;
            for (const auto& p : target_paths) targets.push_back(sp::io::load_poly(p));
            const auto sys = sp::build_coefficient_system(arch, targets);
            const auto solved = sp::solve_system(sys, synth_flags.config(arch));
            sp::ReportDocument doc;
            auto& s = doc.add_section("synth: coefficient matching", "synth");
            s.info("residuals", "residual count", std::to_string(sys.arity()));
            s.info("unknowns", "unknown count", std::to_string(sys.unknowns()));
            report_solve(s, solved.report, synth_flags.tol);
            const auto& w = solved.weights;
            const auto net = arch.with_weights({w.data(), static_cast<std::size_t>(w.size())});
            if (!synth_out.empty()) sp::io::write_file(synth_out, sp::io::serialize_network(net));
            return emit(doc, format);
        }

        if (*fit) {
            const auto arch = sp::io::load_network(arch_path);
            const auto ds = sp::io::load_dataset(data_path);
            const auto sys = sp::build_data_system(arch, ds);
            const auto solved = sp::solve_system(sys, fit_flags.config(arch));
            const auto& w = solved.weights;
            const auto net = arch.with_weights({w.data(), static_cast<std::size_t>(w.size())});
            sp::ReportDocument doc;
            auto& s = doc.add_section("fit-data: one equation per example", "fit");
            s.info("rows", "dataset rows", std::to_string(ds.rows()));
            report_solve(s, solved.report, fit_flags.tol);
            double worst = 0.0;
            for (std::size_t i = 0; i < ds.rows(); ++i) worst = std::max(worst, std::abs(sp::forward(net, ds.row(i))[0] - ds.y[i]));
            s.info("max_prediction_error", "max prediction error", sp::io::format_real(worst));
            if (!fit_out.empty()) sp::io::write_file(fit_out, sp::io::serialize_network(net));
            return emit(doc, format);
        }

        if (*compress) {
            const auto teacher = sp::io::load_network(teacher_path);
            const auto student_arch = sp::io::load_network(student_path);
            const auto result =
                sp::compress_network(teacher, student_arch, compress_degree, compress_flags.config(student_arch));
            sp::ReportDocument doc;
            auto& s = doc.add_section("compress: teacher expansion truncated to degree " + std::to_string(compress_degree),
                                      "compress");
            s.info("teacher.weights", "teacher weights", std::to_string(teacher.weight_count()));
            s.info("student.weights", "student weights", std::to_string(student_arch.weight_count()));
            report_solve(s, result.report, compress_flags.tol);
            if (!compress_out.empty()) sp::io::write_file(compress_out, sp::io::serialize_network(result.student));
            return emit(doc, format);
        }

        for (int id = 1; id <= 4; ++id) {
            if (!*verify[static_cast<std::size_t>(id - 1)]) continue;
            sp::experiments::ExperimentOptions opt;
            opt.data_dir = data_dir;
            opt.seed = verify_seed;
            opt.trace = verify_trace ? &std::cerr : nullptr;
            return emit(sp::experiments::run_experiment(id, opt), format);
        }
    } catch (const sp::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 1;
    } catch (const sp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
