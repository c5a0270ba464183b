#include <cmath>

#include <doctest.h>

#include "superplane/experiments.hpp"
#include "superplane/funcapprox.hpp"
#include "superplane/synthesis.hpp"
#include "jacobian_oracle.hpp"
#include "support.hpp"

namespace sp = superplane;
namespace ex = superplane::experiments;

namespace {

double rel_gap(double a, double b) { return std::fabs(a - b) / (1.0 + std::fabs(b)); }

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("ring axioms and the evaluation homomorphism") {
    testing::Gen g(101);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = static_cast<std::size_t>(g.integer(1, 3));
        const auto p = g.poly(d, 3, 5), q = g.poly(d, 3, 5), r = g.poly(d, 3, 5);
        const auto zero = sp::MultiPoly(d);
        CHECK(p + q == q + p);
        CHECK(testing::coefficient_gap(p * q, q * p) <= 1e-12);
        CHECK(testing::coefficient_gap((p + q) + r, p + (q + r)) <= 1e-12);
        CHECK(testing::coefficient_gap((p * q) * r, p * (q * r)) <= 1e-10);
        CHECK(testing::coefficient_gap(p * (q + r), p * q + p * r) <= 1e-12);
        CHECK(p + zero == p);
        CHECK((p * zero).is_zero());
        CHECK((p - p).is_zero());

        const auto x = g.point(d);
        const double pv = sp::poly_eval(p, x), qv = sp::poly_eval(q, x);
        CHECK(rel_gap(sp::poly_eval(p + q, x), pv + qv) <= 1e-12);
        CHECK(rel_gap(sp::poly_eval(p * q, x), pv * qv) <= 1e-12);
        if (!p.is_zero()) CHECK(sp::truncate_degree(p, static_cast<unsigned>(p.degree())) == p);
    }
}

TEST_CASE("affine_power agrees with repeated multiplication and with evaluation") {
    testing::Gen g(102);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = static_cast<std::size_t>(g.integer(1, 3));
        const sp::AffineForm a{g.uniform(-1, 1), g.point(d)};
        const unsigned k = static_cast<unsigned>(g.integer(0, 6));
        const auto p = sp::affine_power(a, k);
        auto naive = sp::MultiPoly::constant(d, 1.0);
        for (unsigned i = 0; i < k; ++i) naive = naive * sp::MultiPoly::from_affine(a);
        CHECK(testing::coefficient_gap(p, naive) <= 1e-12);
        const auto x = g.point(d);
        CHECK(rel_gap(sp::poly_eval(p, x), std::pow(a(x), k)) <= 1e-12);
    }
}

TEST_CASE("expansion equals the forward pass on 100 random networks") {
    testing::Gen g(103);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const auto net = g.network();
        const auto polys = sp::expand_network(net);
        for (int i = 0; i < 20; ++i) {
            const auto x = g.point(net.input_dim());
            const auto y = sp::forward(net, x);
            for (std::size_t k = 0; k < y.size(); ++k) worst = std::max(worst, rel_gap(sp::poly_eval(polys[k], x), y[k]));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("degree law for stacked power layers") {
    testing::Gen g(104);
    for (unsigned k1 : {1u, 2u, 3u}) {
        for (unsigned k2 : {1u, 2u, 3u}) {
            Eigen::MatrixXd w1(3, 3), w2(2, 4);
            for (Eigen::Index i = 0; i < w1.size(); ++i) w1.data()[i] = g.uniform(0.2, 1.0);
            for (Eigen::Index i = 0; i < w2.size(); ++i) w2.data()[i] = g.uniform(0.2, 1.0);
            const sp::NetworkSpec net(2, {{w1, sp::Activation::power(k1)}, {w2, sp::Activation::power(k2)}});
            CHECK(net.attainable_degree() == k1 * k2);
            for (const auto& p : sp::expand_network(net)) CHECK(p.degree() == static_cast<int>(k1 * k2));
        }
    }
}

TEST_CASE("classify ignores a common shift of the output biases") {
    testing::Gen g(105);
    for (int trial = 0; trial < 30; ++trial) {
        Eigen::MatrixXd w1(3, 3), w2(3, 4);
        for (Eigen::Index i = 0; i < w1.size(); ++i) w1.data()[i] = g.uniform(-1, 1);
        for (Eigen::Index i = 0; i < w2.size(); ++i) w2.data()[i] = g.uniform(-1, 1);
        const sp::NetworkSpec net(2, {{w1, sp::Activation::power(2)}, {w2, sp::Activation::identity()}});
        Eigen::MatrixXd shifted = w2;
        shifted.col(0).array() += g.uniform(-5, 5);
        const sp::NetworkSpec moved(2, {{w1, sp::Activation::power(2)}, {shifted, sp::Activation::identity()}});
        for (int i = 0; i < 10; ++i) {
            const auto x = g.point(2);
            CHECK(sp::classify(net, x) == sp::classify(moved, x));
        }
    }
}

TEST_CASE("odd-symmetric activations have no cosine terms") {
    for (const char* name : {"sigmoid", "tanh"}) {
        const auto fs = sp::fourier_fit(sp::builtin_activation(name, {-6, 6}), 6.0, 8);
        for (double a : fs.a) CHECK(std::fabs(a) <= 1e-8);
    }
}

TEST_CASE("doubling the panels barely moves the coefficients") {
    for (const char* name : {"sigmoid", "tanh", "relu"}) {
        const auto f = sp::builtin_activation(name, {-8, 8});
        const auto a = sp::fourier_fit(f, 8.0, 8);
        const auto b = sp::fourier_fit(f, 8.0, 8, 2 * sp::kDefaultPanels);
        CHECK(std::fabs(a.a0 - b.a0) < 1e-6);
        for (std::size_t n = 0; n < 8; ++n) {
            CHECK(std::fabs(a.a[n] - b.a[n]) < 1e-6);
            CHECK(std::fabs(a.b[n] - b.b[n]) < 1e-6);
        }
    }
}

TEST_CASE("Parseval inequality for the built-in activations") {
    for (const char* name : {"sigmoid", "tanh", "relu", "square"}) {
        const double l = 4.0;
        const auto f = sp::builtin_activation(name, {-l, l});
        const auto fs = sp::fourier_fit(f, l, 16);
        const sp::SampledFunction f2([&](double x) { return f(x) * f(x); }, {-l, l});
        const double energy = sp::fourier_fit(f2, l, 1).a0;  // (1/l) * integral of f^2
        double sum = 0.5 * fs.a0 * fs.a0;
        for (std::size_t n = 0; n < 16; ++n) sum += fs.a[n] * fs.a[n] + fs.b[n] * fs.b[n];
        CHECK(sum <= energy + 1e-6);
    }
}

TEST_CASE("least-squares residual is non-increasing in degree") {
    for (const char* name : {"sigmoid", "tanh", "relu"}) {
        const auto f = sp::builtin_activation(name, {-8, 8});
        double prev = INFINITY;
        for (unsigned deg = 0; deg <= 11; ++deg) {
            const auto e = sp::approx_error(f, sp::lsq_poly_fit(f, {-8, 8}, deg, 1001), {-8, 8}, 1001);
            CHECK(e.rmse <= prev * (1 + 1e-12));
            prev = e.rmse;
        }
    }
}

TEST_CASE("forward and central Jacobians agree on random smooth systems") {
    testing::Gen g(106);
    for (int trial = 0; trial < 20; ++trial) {
        const auto net = g.network(9);
        if (net.output_dim() != 1) continue;
        Eigen::MatrixXd X(5, static_cast<Eigen::Index>(net.input_dim()));
        std::vector<double> y(5);
        for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = g.uniform(-1, 1);
        for (auto& v : y) v = g.uniform(-1, 1);
        const auto sys = sp::build_data_system(net, sp::Dataset(X, y));
        const auto w0 = net.flat_weights();
        const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(w0.data(), static_cast<Eigen::Index>(w0.size()));
        CHECK((sp::residual_jacobian(sys, w) - testing::central_jacobian(sys, w)).cwiseAbs().maxCoeff() <= 1e-4);
    }
}

TEST_CASE("a fixed seed gives bit-identical solves") {
    const auto sys = sp::build_coefficient_system(ex::hidden_layer_arch(2, 4, 2, 2),
                                                  {ex::line_class_target(0), ex::line_class_target(1)});
    for (auto initial : {sp::InitialGuess::Ones, sp::InitialGuess::RandomRestarts}) {
        sp::SolverConfig cfg;
        cfg.initial = initial;
        cfg.seed = 77;
        const auto a = sp::solve_system(sys, cfg);
        const auto b = sp::solve_system(sys, cfg);
        CHECK(a.weights == b.weights);
        CHECK(a.report.iterations == b.report.iterations);
        CHECK(a.report.final_residual_norm == b.report.final_residual_norm);
        CHECK(a.report.restarts_used == b.report.restarts_used);
    }
}

TEST_CASE("converged solves are roots and match the target functionally") {
    testing::Gen g(107);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto arch = ex::hidden_layer_arch(2, 4, 2, 1);
        const auto target = g.poly(2, 2, 6);
        if (target.is_zero()) continue;
        const auto sys = sp::build_coefficient_system(arch, {target});
        sp::SolverConfig cfg;
        cfg.initial = sp::InitialGuess::RandomRestarts;
        cfg.seed = seed;
        const auto r = sp::solve_system(sys, cfg);
        if (!r.report.converged) continue;
        CHECK(r.report.final_residual_norm <= cfg.tol_residual);
        CHECK(sys(r.weights).lpNorm<Eigen::Infinity>() <= cfg.tol_residual * 10);
        const auto net = arch.with_weights({r.weights.data(), static_cast<std::size_t>(r.weights.size())});
        for (int i = 0; i < 10; ++i) {
            const auto x = g.point(2, -2, 2);
            const double want = sp::poly_eval(target, x);
            CHECK(std::fabs(sp::forward(net, x)[0] - want) <= 1e-6 * (1 + std::fabs(want)));
        }
    }
}

}  // TEST_SUITE
