#include "superplane/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "superplane/error.hpp"
#include "superplane/io.hpp"

namespace superplane::experiments {

namespace {

// Tolerances for values printed to ~7 digits and for solver self-consistency.
constexpr double kPrintedTol = 1e-3;
constexpr double kPublishedResidualTol = 5e-3;
constexpr double kSolvedResidualTol = 1e-8;

SolverConfig solver_config(const ExperimentOptions& opt) {
    SolverConfig cfg;
    cfg.seed = opt.seed;
    if (opt.max_iters) cfg.max_iters = *opt.max_iters;
    if (opt.tol_residual) cfg.tol_residual = *opt.tol_residual;
    cfg.trace = opt.trace;
    return cfg;
}

double inf_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

NetworkSpec instantiate(const NetworkSpec& arch, const Eigen::VectorXd& w) {
    return arch.with_weights({w.data(), static_cast<std::size_t>(w.size())});
}

void report_solve(ReportSection& s, const SolveReport& r, std::size_t max_iters) {
    s.equal("solve.converged", "solver converged", r.converged ? 1.0 : 0.0, 1.0);
    s.at_most("solve.residual_inf", "residual inf-norm", r.final_residual_norm, kSolvedResidualTol);
    s.at_most("solve.iterations", "iterations", static_cast<double>(r.iterations), static_cast<double>(max_iters));
    s.info("solve.restarts", "random restarts used", std::to_string(r.restarts_used));
}

double max_coefficient_gap(const MultiPoly& p, const MultiPoly& q, unsigned degree) {
    double gap = 0.0;
    for (const auto& e : monomials_up_to(p.nvars(), degree)) gap = std::max(gap, std::abs(p.coefficient(e) - q.coefficient(e)));
    return gap;
}

ReportDocument experiment1(const ExperimentOptions& opt) {
    ReportDocument doc;
    auto& s = doc.add_section("Experiment 1: two-line classification, 4 hidden x^2 nodes", "exp1");
    const MultiPoly c0 = line_class_target(0);
    const MultiPoly c1 = line_class_target(1);
    const MultiPoly printed0(2, {{{2, 0}, -1.0}, {{0, 2}, -1.0}, {{1, 1}, 2.0}});
    const MultiPoly printed1(2, {{{2, 0}, -1.0}, {{0, 2}, -1.0}, {{0, 0}, -1.0}, {{1, 1}, -2.0}, {{1, 0}, 2.0}, {{0, 1}, 2.0}});
    s.near("target.c0.max_gap", "c0 coefficient gap", max_coefficient_gap(c0, printed0, 2), 0.0, 1e-12);
    s.near("target.c1.max_gap", "c1 coefficient gap", max_coefficient_gap(c1, printed1, 2), 0.0, 1e-12);

    const NetworkSpec arch = hidden_layer_arch(2, 4, 2, 2);
    const ResidualSystem sys = build_coefficient_system(arch, {c0, c1});
    s.equal("system.residuals", "residual count", static_cast<double>(sys.arity()), 12.0);
    s.equal("system.unknowns", "unknown count", static_cast<double>(sys.unknowns()), 22.0);

    const NetworkSpec published = io::load_network(opt.data_dir / "exp1_published.json");
    const auto pw = published.flat_weights();
    s.at_most("published.residual_inf", "published weights residual",
              inf_norm(sys(Eigen::Map<const Eigen::VectorXd>(pw.data(), static_cast<Eigen::Index>(pw.size())))),
              kPublishedResidualTol);

    const SolverConfig cfg = solver_config(opt);
    const SolveResult solved = solve_system(sys, cfg);
    report_solve(s, solved.report, cfg.max_iters);

    const NetworkSpec net = instantiate(arch, solved.weights);
    const auto points = line_class_points();
    std::size_t correct = 0;
    for (const auto& [x, cls] : points) correct += classify(net, x) == cls ? 1 : 0;
    s.info("accuracy.points", "classified points", std::to_string(points.size()));
    s.equal("accuracy", "classification accuracy", static_cast<double>(correct) / static_cast<double>(points.size()), 1.0);
    return doc;
}

ReportDocument experiment2(const ExperimentOptions& opt) {
    ReportDocument doc;
    auto& s = doc.add_section("Experiment 2: regression r = 2x1 + 2x1x2 + x2^2, 4 hidden x^2 nodes", "exp2");
    const NetworkSpec arch = hidden_layer_arch(2, 4, 2, 1);
    const ResidualSystem sys = build_coefficient_system(arch, {regression_target()});
    s.equal("system.residuals", "residual count", static_cast<double>(sys.arity()), 6.0);

    const NetworkSpec published = io::load_network(opt.data_dir / "exp2_published.json");
    const auto pw = published.flat_weights();
    s.at_most("published.residual_inf", "published weights residual",
              inf_norm(sys(Eigen::Map<const Eigen::VectorXd>(pw.data(), static_cast<Eigen::Index>(pw.size())))),
              kPublishedResidualTol);
    const std::array<double, 2> p11{1.0, 1.0};
    const std::array<double, 2> p21{2.0, 1.0};
    s.near("published.forward.1_1", "published forward(1,1)", forward(published, p11)[0], 5.0, kPrintedTol);
    s.near("published.forward.2_1", "published forward(2,1)", forward(published, p21)[0], 9.0, kPrintedTol);

    const SolverConfig cfg = solver_config(opt);
    const SolveResult solved = solve_system(sys, cfg);
    report_solve(s, solved.report, cfg.max_iters);
    const NetworkSpec net = instantiate(arch, solved.weights);
    s.near("forward.1_1", "forward(1,1)", forward(net, p11)[0], 5.0, 1e-6);
    s.near("forward.2_1", "forward(2,1)", forward(net, p21)[0], 9.0, 1e-6);
    return doc;
}

ReportDocument experiment3(const ExperimentOptions& opt) {
    ReportDocument doc;
    auto& s = doc.add_section("Experiment 3: class polynomials from the 4-row toy dataset, 8 hidden x^4 nodes", "exp3");
    const Dataset table = io::load_dataset(opt.data_dir / "table1.csv");
    s.info("dataset.rows", "dataset rows", std::to_string(table.rows()));

    const MultiPoly sp0 = target_sp_classification(table, 3.0);
    const MultiPoly sp1 = target_sp_classification(table, 8.0);
    const MultiPoly printed0 = io::load_poly(opt.data_dir / "exp3_sp0.poly");
    const MultiPoly printed1 = io::load_poly(opt.data_dir / "exp3_sp1.poly");
    s.near("sp0.max_gap", "SP0 coefficient gap (15 monomials)", max_coefficient_gap(sp0, printed0, 4), 0.0, 1e-12);
    s.near("sp1.max_gap", "SP1 coefficient gap (15 monomials)", max_coefficient_gap(sp1, printed1, 4), 0.0, 1e-12);

    const std::array<double, 2> first{0.1, 0.6};
    s.near("sp1.at_0.1_0.6", "SP1(0.1,0.6) vs -[0.08]*[0.18]", poly_eval(sp1, first), -(0.08 * 0.18), 1e-12);

    // Output values printed by the published verification session.
    struct Row {
        std::array<double, 2> x;
        std::array<double, 2> expected;
        std::size_t label_index;
        const char* tag;
    };
    const std::array<Row, 4> rows{{
        {{0.1, 0.6}, {-0.0000000032924, -0.0143999650938}, 0, "0.1_0.6"},
        {{0.2, 0.7}, {0.000000012959, -0.001599893885}, 0, "0.2_0.7"},
        {{0.3, 0.8}, {-0.00159995996, 0.00000018751}, 1, "0.3_0.8"},
        {{0.4, 0.9}, {-0.01439992034, 0.00000028523}, 1, "0.4_0.9"},
    }};
    const std::array<double, 2> labels{3.0, 8.0};

    const NetworkSpec published = io::load_network(opt.data_dir / "exp3_published.json");
    for (const auto& row : rows) {
        const auto out = forward(published, row.x);
        const std::string point = "(" + std::to_string(row.x[0]).substr(0, 3) + "," + std::to_string(row.x[1]).substr(0, 3) + ")";
        for (std::size_t k = 0; k < 2; ++k) {
            s.near("forward." + std::string(row.tag) + ".y" + std::to_string(k),
                   "forward" + point + " y" + std::to_string(k), out[k], row.expected[k], 1e-5);
        }
        s.equal("classify." + std::string(row.tag), "label at " + point, labels[classify(published, row.x)],
                labels[row.label_index]);
    }
    return doc;
}

ReportDocument experiment4(const ExperimentOptions& opt) {
    ReportDocument doc;
    auto& s = doc.add_section("Experiment 4: data-matching system on a 3x3 grid of r = 2x1 + 2x1x2 + x2^2", "exp4");
    s.info("dataset", "dataset", "x1, x2 in {-1, 0, 1}, 9 rows");
    const Dataset ds = regression_grid_dataset();
    const NetworkSpec arch = hidden_layer_arch(2, 4, 2, 1);
    const ResidualSystem sys = build_data_system(arch, ds);
    s.equal("system.residuals", "residual count", static_cast<double>(sys.arity()), 9.0);

    const SolverConfig cfg = solver_config(opt);
    const SolveResult solved = solve_system(sys, cfg);
    report_solve(s, solved.report, cfg.max_iters);
    const NetworkSpec net = instantiate(arch, solved.weights);
    double worst = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) worst = std::max(worst, std::abs(forward(net, ds.row(i))[0] - ds.y[i]));
    s.at_most("max_prediction_error", "max prediction error on grid", worst, 1e-4);
    return doc;
}

}  // namespace

NetworkSpec hidden_layer_arch(std::size_t inputs, std::size_t hidden, unsigned k, std::size_t outputs) {
    std::vector<LayerSpec> layers;
    layers.push_back({Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(hidden), static_cast<Eigen::Index>(inputs) + 1),
                      Activation::power(k)});
    layers.push_back({Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(outputs), static_cast<Eigen::Index>(hidden) + 1),
                      Activation::identity()});
    return NetworkSpec(inputs, std::move(layers));
}

MultiPoly line_class_target(int cls) {
    if (cls == 0) return -affine_power({0.0, {1.0, -1.0}}, 2);
    if (cls == 1) return -affine_power({-1.0, {1.0, 1.0}}, 2);
    throw UsageError("line classes are 0 and 1");
}

MultiPoly regression_target() { return MultiPoly(2, {{{1, 0}, 2.0}, {{1, 1}, 2.0}, {{0, 2}, 1.0}}); }

std::vector<std::pair<std::array<double, 2>, std::size_t>> line_class_points() {
    std::vector<std::pair<std::array<double, 2>, std::size_t>> pts;
    for (int i = 0; i < 20; ++i) {
        const double x1 = (i + 0.5) / 20.0;
        pts.push_back({{x1, x1}, 0});
    }
    for (int i = 0; i < 20; ++i) {
        const double x1 = (i + 0.5) / 20.0;
        pts.push_back({{x1, 1.0 - x1}, 1});
    }
    return pts;
}

Dataset regression_grid_dataset() {
    Eigen::MatrixXd X(9, 2);
    std::vector<double> y;
    const MultiPoly r = regression_target();
    int row = 0;
    for (double x1 : {-1.0, 0.0, 1.0}) {
        for (double x2 : {-1.0, 0.0, 1.0}) {
            X(row, 0) = x1;
            X(row, 1) = x2;
            const std::array<double, 2> x{x1, x2};
            y.push_back(poly_eval(r, x));
            ++row;
        }
    }
    return Dataset(std::move(X), std::move(y));
}

ReportDocument run_experiment(int id, const ExperimentOptions& options) {
    switch (id) {
        case 1: return experiment1(options);
        case 2: return experiment2(options);
        case 3: return experiment3(options);
        case 4: return experiment4(options);
        default: throw UsageError("experiment id must be 1..4");
    }
}

}  // namespace superplane::experiments
