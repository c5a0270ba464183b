#include <doctest.h>

#include "superplane/error.hpp"
#include "superplane/experiments.hpp"
#include "superplane/network.hpp"
#include "superplane/synthesis.hpp"
#include "support.hpp"

namespace sp = superplane;
using testing::close;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("NetworkSpec validates its layers") {
    CHECK_THROWS_AS(sp::NetworkSpec(2, {}), sp::StructuralError);
    try {
        sp::NetworkSpec(2, {{mat({{0, 1, 1}}), sp::Activation::identity()}, {mat({{0, 1, 1}}), sp::Activation::identity()}});
        FAIL("expected a structural error");
    } catch (const sp::StructuralError& e) {
        CHECK(std::string(e.what()).find("layer 1") != std::string::npos);
    }
    Eigen::MatrixXd bad = mat({{0, 1, 1}});
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(sp::NetworkSpec(2, {{bad, sp::Activation::identity()}}), sp::StructuralError);
    CHECK_THROWS_AS(sp::Activation::power(0), sp::ConfigError);
}

TEST_CASE("forward with the published Experiment-2 weights") {
    const auto net = testing::published(2);
    CHECK(close(sp::forward(net, std::vector{1.0, 1.0})[0], 5.0, 1e-3));
    CHECK(close(sp::forward(net, std::vector{2.0, 1.0})[0], 9.0, 1e-3));
    CHECK_THROWS_AS(sp::forward(net, std::vector{1.0}), sp::DimensionError);
}

TEST_CASE("identity layer returns its input") {
    const sp::NetworkSpec net(3, {{mat({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}), sp::Activation::identity()}});
    const std::vector x{0.3, -1.2, 7.0};
    CHECK(sp::forward(net, x) == x);
}

TEST_CASE("weights round-trip through the flat layout") {
    const auto net = testing::published(1);
    CHECK(net.weight_count() == 22);
    const auto flat = net.flat_weights();
    CHECK(flat[0] == net.layers()[0].weights(0, 0));
    CHECK(flat[1] == net.layers()[0].weights(0, 1));
    CHECK(flat[12] == net.layers()[1].weights(0, 0));
    const auto copy = net.with_weights(flat);
    CHECK(copy.flat_weights() == flat);
    CHECK_THROWS_AS(net.with_weights(std::vector<double>(3, 0.0)), sp::DimensionError);
}

TEST_CASE("expand_network") {
    const sp::NetworkSpec lin(2, {{mat({{3, 1, -1}}), sp::Activation::identity()}});
    const auto p = sp::expand_network(lin);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == sp::MultiPoly(2, {{{0, 0}, 3.0}, {{1, 0}, 1.0}, {{0, 1}, -1.0}}));

    // ybar0 = bc0 + sum_j b0j (aj0 + aj1 x1 + aj2 x2)^2, built term by term.
    const auto net = testing::published(1);
    const auto& A = net.layers()[0].weights;
    const auto& B = net.layers()[1].weights;
    const auto ys = sp::expand_network(net);
    REQUIRE(ys.size() == 2);
    for (Eigen::Index k = 0; k < 2; ++k) {
        auto want = sp::MultiPoly::constant(2, B(k, 0));
        for (Eigen::Index j = 0; j < 4; ++j) {
            want = want + B(k, j + 1) * sp::affine_power({A(j, 0), {A(j, 1), A(j, 2)}}, 2);
        }
        CHECK(testing::coefficient_gap(ys[static_cast<std::size_t>(k)], want) <= 1e-14);
    }

    testing::Gen g(5);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t width = static_cast<std::size_t>(g.integer(1, 4));
        Eigen::MatrixXd w1(width, 3), w2(1, width + 1);
        for (Eigen::Index i = 0; i < w1.size(); ++i) w1.data()[i] = g.uniform(-1, 1);
        for (Eigen::Index i = 0; i < w2.size(); ++i) w2.data()[i] = g.uniform(-1, 1);
        const sp::NetworkSpec n2(2, {{w1, sp::Activation::power(2)}, {w2, sp::Activation::power(2)}});
        const auto e = sp::expand_network(n2)[0];
        for (int i = 0; i < 50; ++i) {
            const auto x = g.point(2);
            const double f = sp::forward(n2, x)[0];
            CHECK(std::fabs(sp::poly_eval(e, x) - f) <= 1e-8 * (1 + std::fabs(f)));
        }
    }
}

TEST_CASE("classify") {
    const auto net = testing::published(3);
    CHECK(sp::classify(net, std::vector{0.1, 0.6}) == 0);
    CHECK(sp::classify(net, std::vector{0.4, 0.9}) == 1);

    const sp::NetworkSpec twins(2, {{mat({{1, 2, 3}, {1, 2, 3}}), sp::Activation::power(2)}});
    CHECK(sp::classify(twins, std::vector{0.3, -0.8}) == 0);

    const sp::NetworkSpec single(2, {{mat({{1, 2, 3}}), sp::Activation::identity()}});
    CHECK_THROWS_AS(sp::classify(single, std::vector{0.0, 0.0}), sp::UsageError);
}

TEST_CASE("Dataset validation") {
    CHECK_THROWS_AS(sp::Dataset(Eigen::MatrixXd(2, 2), {1.0}), sp::StructuralError);
    CHECK_THROWS_AS(sp::Dataset(Eigen::MatrixXd(0, 2), {}), sp::StructuralError);
    const auto ds = testing::table1();
    CHECK(ds.rows() == 4);
    CHECK(ds.features() == 2);
    CHECK(ds.row(2) == std::vector{0.3, 0.8});
}

}  // TEST_SUITE
