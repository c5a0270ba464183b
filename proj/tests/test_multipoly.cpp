#include <doctest.h>

#include "superplane/error.hpp"
#include "superplane/multipoly.hpp"
#include "superplane/synthesis.hpp"
#include "support.hpp"

namespace sp = superplane;
using testing::close;

namespace {

sp::MultiPoly x1() { return sp::MultiPoly::variable(2, 0); }
sp::MultiPoly x2() { return sp::MultiPoly::variable(2, 1); }
sp::MultiPoly one() { return sp::MultiPoly::constant(2, 1.0); }

}  // namespace

TEST_SUITE("multipoly") {

TEST_CASE("graded-lex order puts lower total degree first") {
    sp::GradedLexLess less;
    CHECK(less({0, 0}, {1, 0}));
    CHECK(less({1, 0}, {0, 2}));
    CHECK(less({0, 2}, {1, 1}));
    CHECK(less({1, 1}, {2, 0}));
    CHECK_FALSE(less({2, 0}, {2, 0}));
}

TEST_CASE("construction drops tiny coefficients") {
    sp::MultiPoly p(2, {{{1, 0}, 1e-16}, {{0, 1}, 2.0}});
    CHECK(p.size() == 1);
    CHECK(p.coefficient({0, 1}) == 2.0);
    CHECK(sp::MultiPoly(3).degree() == -1);
    CHECK_THROWS_AS(sp::MultiPoly(0), sp::DimensionError);
    CHECK_THROWS_AS(p.add_term({1}, 1.0), sp::DimensionError);
}

TEST_CASE("poly_add") {
    CHECK((x1() + (-x1())).is_zero());
    const auto s = (x1() * x1() + one()) + x2();
    CHECK(s == sp::MultiPoly(2, {{{2, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, 1.0}}));
    CHECK_THROWS_AS(sp::poly_add(sp::MultiPoly(2), sp::MultiPoly(3)), sp::DimensionError);

    const auto sp0 = sp::target_sp_classification(testing::table1(), 3);
    CHECK((sp0 + (-sp0)).is_zero());
}

TEST_CASE("poly_mul") {
    CHECK((x1() + x2()) * (x1() - x2()) == x1() * x1() - x2() * x2());
    CHECK_THROWS_AS(sp::poly_mul(sp::MultiPoly(1), sp::MultiPoly(2)), sp::DimensionError);

    auto sq = [](double a, double b) {
        const auto dx = x1() - sp::MultiPoly::constant(2, a);
        const auto dy = x2() - sp::MultiPoly::constant(2, b);
        return dx * dx + dy * dy;
    };
    const auto sp0 = -(sq(0.1, 0.6) * sq(0.2, 0.7));
    CHECK(close(sp0.coefficient({0, 0}), -0.1961, 1e-12));
    CHECK(close(sp0.coefficient({3, 0}), 0.6, 1e-12));

    testing::Gen g(11);
    for (int i = 0; i < 10; ++i) {
        const auto p = g.poly(3, 4, 6);
        CHECK(sp::MultiPoly::constant(3, 1.0) * p == p);
    }
}

TEST_CASE("affine_power") {
    CHECK(sp::affine_power({1.0, {2.0}}, 2) == sp::MultiPoly(1, {{{0}, 1.0}, {{1}, 4.0}, {{2}, 4.0}}));
    CHECK(sp::affine_power({3.0, {1.0, 1.0}}, 0) == sp::MultiPoly::constant(2, 1.0));

    const auto c1 = -sp::affine_power({-1.0, {1.0, 1.0}}, 2);
    const sp::MultiPoly want1(2, {{{2, 0}, -1.0}, {{0, 2}, -1.0}, {{0, 0}, -1.0}, {{1, 1}, -2.0}, {{1, 0}, 2.0}, {{0, 1}, 2.0}});
    CHECK(testing::coefficient_gap(c1, want1) == 0.0);

    const auto c0 = -sp::affine_power({0.0, {1.0, -1.0}}, 2);
    const sp::MultiPoly want0(2, {{{2, 0}, -1.0}, {{0, 2}, -1.0}, {{1, 1}, 2.0}});
    CHECK(testing::coefficient_gap(c0, want0) == 0.0);
}

TEST_CASE("apply_univariate_to_affine") {
    const sp::UniPoly square{0.0, 0.0, 1.0};
    CHECK(sp::apply_univariate_to_affine(square, {0.0, {1.0, -1.0}}) ==
          sp::MultiPoly(2, {{{2, 0}, 1.0}, {{1, 1}, -2.0}, {{0, 2}, 1.0}}));
    CHECK(sp::apply_univariate_to_affine(sp::UniPoly{1.0}, {0.7, {0.2, 0.3}}) == sp::MultiPoly::constant(2, 1.0));

    const auto net = testing::published(3);
    const auto& w = net.layers()[0].weights;
    const sp::AffineForm a{w(0, 0), {w(0, 1), w(0, 2)}};
    const auto p = sp::apply_univariate_to_affine(sp::UniPoly::monomial(4), a);
    CHECK(p.degree() == 4);
    const double direct = std::pow(w(0, 0) + 0.1 * w(0, 1) + 0.6 * w(0, 2), 4);
    CHECK(close(sp::poly_eval(p, std::vector{0.1, 0.6}), direct, 1e-12 * (1 + std::fabs(direct))));
}

TEST_CASE("poly_eval") {
    const auto sp0 = sp::io::load_poly(testing::data_dir() / "exp3_sp0.poly");
    const auto sp1 = sp::io::load_poly(testing::data_dir() / "exp3_sp1.poly");
    CHECK(close(sp::poly_eval(sp1, std::vector{0.1, 0.6}), -0.0144, 1e-9));
    CHECK(close(sp::poly_eval(sp0, std::vector{0.3, 0.8}), -0.0016, 1e-9));
    CHECK(sp::poly_eval(sp0, std::vector{0.0, 0.0}) == sp0.coefficient({0, 0}));
    CHECK_THROWS_AS(sp::poly_eval(sp0, std::vector{1.0}), sp::DimensionError);
}

TEST_CASE("truncate_degree") {
    const sp::MultiPoly p(1, {{{3}, 1.0}, {{1}, 1.0}, {{0}, 1.0}});
    CHECK(sp::truncate_degree(p, 2) == sp::MultiPoly(1, {{{1}, 1.0}, {{0}, 1.0}}));
    CHECK(sp::truncate_degree(p, 3) == p);

    const auto sp0 = sp::io::load_poly(testing::data_dir() / "exp3_sp0.poly");
    const auto t = sp::truncate_degree(sp0, 2);
    CHECK(t.size() == 6);
    CHECK(t.coefficient({2, 0}) == -0.98);
    CHECK(t.coefficient({3, 0}) == 0.0);
    CHECK(t.coefficient({0, 4}) == 0.0);
}

TEST_CASE("coefficient") {
    const auto sp0 = sp::io::load_poly(testing::data_dir() / "exp3_sp0.poly");
    CHECK(sp::coefficient(sp0, {1, 1}) == -0.76);
    CHECK(sp::coefficient(x1() * x1() + one(), {0, 0}) == 1.0);
    CHECK(sp::coefficient(x1(), {5, 5}) == 0.0);
    CHECK_THROWS_AS(sp::coefficient(x1(), {1}), sp::DimensionError);
}

TEST_CASE("monomials_up_to counts binomial(d + D, D)") {
    CHECK(sp::monomials_up_to(2, 4).size() == 15);
    CHECK(sp::monomials_up_to(3, 2).size() == 10);
}

}  // TEST_SUITE
