#include "superplane/funcapprox.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "superplane/error.hpp"

namespace superplane {

namespace {

constexpr double kMaxIntermediate = 1e15;

double sample(const SampledFunction& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "function value is not finite at x = " << x;
        throw NumericError(os.str());
    }
    return v;
}

// Largest u^m/m! over m <= max_power.
double peak_scaled_power(double u, unsigned max_power) {
    double term = 1.0;
    double peak = 1.0;
    for (unsigned m = 1; m <= max_power; ++m) {
        term *= u / m;
        peak = std::max(peak, std::abs(term));
    }
    return peak;
}

}  // namespace

SampledFunction::SampledFunction(std::function<double(double)> evaluator, Interval domain)
    : evaluator_(std::move(evaluator)), domain_(domain) {
    if (!(domain_.lo < domain_.hi)) throw ConfigError("function domain needs lo < hi");
}

SampledFunction builtin_activation(std::string_view name, Interval domain) {
    if (name == "sigmoid") return {[](double x) { return 1.0 / (1.0 + std::exp(-x)); }, domain};
    if (name == "tanh") return {[](double x) { return std::tanh(x); }, domain};
    if (name == "relu") return {[](double x) { return x > 0.0 ? x : 0.0; }, domain};
    if (name == "square") return {[](double x) { return x * x; }, domain};
    throw UsageError("unknown activation '" + std::string(name) + "' (expected sigmoid, tanh, relu or square)");
}

std::vector<double> uniform_grid(Interval interval, std::size_t gridpoints) {
    if (gridpoints < 2) throw ConfigError("grid needs at least 2 points");
    std::vector<double> xs(gridpoints);
    const double h = interval.width() / static_cast<double>(gridpoints - 1);
    for (std::size_t i = 0; i < gridpoints; ++i) xs[i] = interval.lo + static_cast<double>(i) * h;
    xs.back() = interval.hi;
    return xs;
}

FourierSeries fourier_fit(const SampledFunction& f, double half_period, std::size_t length, std::size_t panels) {
    if (!(half_period > 0.0)) throw ConfigError("half period must be positive");
    if (length == 0) throw ConfigError("Fourier length must be positive");
    if (panels == 0 || panels % 2 != 0) throw ConfigError("Simpson quadrature needs an even, positive panel count");
    if (!f.domain().contains({-half_period, half_period})) {
        throw ConfigError("function domain does not contain [-l, l]");
    }

    const double l = half_period;
    const double h = 2.0 * l / static_cast<double>(panels);
    std::vector<double> xs(panels + 1);
    std::vector<double> weights(panels + 1);
    std::vector<double> values(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) {
        xs[i] = -l + static_cast<double>(i) * h;
        weights[i] = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        values[i] = sample(f, xs[i]);
    }
    xs.back() = l;

    auto integrate = [&](auto&& kernel) {
        double sum = 0.0;
        for (std::size_t i = 0; i <= panels; ++i) sum += weights[i] * values[i] * kernel(xs[i]);
        return sum * h / 3.0;
    };

    FourierSeries fs;
    fs.half_period = l;
    fs.a0 = integrate([](double) { return 1.0; }) / l;
    fs.a.resize(length);
    fs.b.resize(length);
    for (std::size_t n = 1; n <= length; ++n) {
        const double w = static_cast<double>(n) * std::numbers::pi / l;
        fs.a[n - 1] = integrate([w](double x) { return std::cos(w * x); }) / l;
        fs.b[n - 1] = integrate([w](double x) { return std::sin(w * x); }) / l;
    }
    return fs;
}

double fourier_eval(const FourierSeries& fs, double x) {
    double v = 0.5 * fs.a0;
    for (std::size_t n = 1; n <= fs.length(); ++n) {
        const double u = static_cast<double>(n) * std::numbers::pi * x / fs.half_period;
        v += fs.a[n - 1] * std::cos(u) + fs.b[n - 1] * std::sin(u);
    }
    return v;
}

UniPoly maclaurin_trig(Trig kind, unsigned terms) {
    if (terms == 0) throw ConfigError("Maclaurin series needs at least one term");
    const unsigned degree = kind == Trig::Sin ? 2 * terms - 1 : 2 * terms - 2;
    std::vector<double> c(degree + 1, 0.0);
    // Build 1/m! incrementally to avoid forming large factorials.
    double inv_factorial = 1.0;
    for (unsigned m = 0; m <= degree; ++m) {
        if (m > 0) inv_factorial /= m;
        const bool odd = m % 2 == 1;
        if (odd != (kind == Trig::Sin)) continue;
        const unsigned n = kind == Trig::Sin ? (m - 1) / 2 : m / 2;
        c[m] = (n % 2 == 0 ? 1.0 : -1.0) * inv_factorial;
    }
    return UniPoly(std::move(c));
}

unsigned maclaurin_terms_for(double u_max, double tolerance) {
    const double log_tol = std::log(tolerance);
    for (unsigned k = 1; k < 100000; ++k) {
        const double m = 2.0 * k + 1.0;
        const double log_bound = u_max > 0.0 ? m * std::log(u_max) - std::lgamma(m + 1.0) : -INFINITY;
        if (log_bound < log_tol) return k;
    }
    throw NumericError("Maclaurin term bound did not converge");
}

UniPoly fourier_to_poly(const FourierSeries& fs, unsigned terms) {
    if (terms == 0) throw ConfigError("Maclaurin series needs at least one term");
    const UniPoly sin_poly = maclaurin_trig(Trig::Sin, terms);
    const UniPoly cos_poly = maclaurin_trig(Trig::Cos, terms);
    UniPoly result{0.5 * fs.a0};
    for (std::size_t n = 1; n <= fs.length(); ++n) {
        const double an = fs.a[n - 1];
        const double bn = fs.b[n - 1];
        if (an == 0.0 && bn == 0.0) continue;
        const double u_edge = static_cast<double>(n) * std::numbers::pi;
        if (peak_scaled_power(u_edge, 2 * terms - 1) > kMaxIntermediate) {
            throw ConfigError("Maclaurin substitution for harmonic " + std::to_string(n) +
                              " needs intermediate magnitudes above 1e15; use the least-squares fit instead");
        }
        const double scale = static_cast<double>(n) * std::numbers::pi / fs.half_period;
        if (an != 0.0) result = result + an * rescale_argument(cos_poly, scale);
        if (bn != 0.0) result = result + bn * rescale_argument(sin_poly, scale);
    }
    for (double c : result.coeffs()) {
        if (!std::isfinite(c)) throw NumericError("non-finite coefficient after Maclaurin substitution");
    }
    return result;
}

UniPoly fourier_to_poly(const FourierSeries& fs) {
    const double u_max = static_cast<double>(fs.length()) * std::numbers::pi;
    return fourier_to_poly(fs, maclaurin_terms_for(u_max));
}

UniPoly lsq_poly_fit(const SampledFunction& f, Interval interval, unsigned degree, std::size_t gridpoints) {
    if (!(interval.lo < interval.hi)) throw ConfigError("fit interval needs lo < hi");
    if (gridpoints <= degree) throw ConfigError("least-squares fit needs more grid points than the degree");
    if (!f.domain().contains(interval)) throw ConfigError("fit interval lies outside the function domain");

    const auto xs = uniform_grid(interval, gridpoints);
    const auto n = static_cast<Eigen::Index>(gridpoints);
    const auto k = static_cast<Eigen::Index>(degree) + 1;
    const double alpha = -(interval.lo + interval.hi) / interval.width();
    const double beta = 2.0 / interval.width();

    // Chebyshev design matrix in t = alpha + beta x.
    Eigen::MatrixXd basis(n, k);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = alpha + beta * xs[static_cast<std::size_t>(i)];
        basis(i, 0) = 1.0;
        if (k > 1) basis(i, 1) = t;
        for (Eigen::Index j = 2; j < k; ++j) basis(i, j) = 2.0 * t * basis(i, j - 1) - basis(i, j - 2);
        y[i] = sample(f, xs[static_cast<std::size_t>(i)]);
    }

    const Eigen::MatrixXd gram = basis.transpose() * basis;
    const Eigen::VectorXd rhs = basis.transpose() * y;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.rcond() < 1e-14) {
        throw NumericError("least-squares normal equations are rank deficient");
    }
    const Eigen::VectorXd cheb = ldlt.solve(rhs);

    // Chebyshev -> monomial in t, then t -> alpha + beta x.
    UniPoly prev{1.0};
    UniPoly cur{0.0, 1.0};
    UniPoly in_t = cheb[0] * prev;
    if (k > 1) in_t = in_t + cheb[1] * cur;
    for (Eigen::Index j = 2; j < k; ++j) {
        std::vector<double> next(cur.coeffs().size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.coeffs().size(); ++i) next[i + 1] += 2.0 * cur.coeffs()[i];
        for (std::size_t i = 0; i < prev.coeffs().size(); ++i) next[i] -= prev.coeffs()[i];
        prev = std::move(cur);
        cur = UniPoly(std::move(next));
        in_t = in_t + cheb[j] * cur;
    }
    return substitute_affine(in_t, alpha, beta);
}

ApproxError approx_error(const SampledFunction& f, const UniPoly& p, Interval interval, std::size_t gridpoints) {
    const auto xs = uniform_grid(interval, gridpoints);
    double max_abs = 0.0;
    double sq = 0.0;
    for (double x : xs) {
        const double e = std::abs(p(x) - f(x));
        max_abs = std::max(max_abs, e);
        sq += e * e;
    }
    return {max_abs, std::sqrt(sq / static_cast<double>(xs.size()))};
}

}  // namespace superplane
