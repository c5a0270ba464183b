#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "superplane/unipoly.hpp"

namespace superplane {

struct Interval {
    double lo;
    double hi;

    double width() const noexcept { return hi - lo; }
    bool contains(const Interval& other) const noexcept { return lo <= other.lo && other.hi <= hi; }
};

/// A real function together with the closed interval it is defined on.
class SampledFunction {
public:
    SampledFunction(std::function<double(double)> evaluator, Interval domain);

    const Interval& domain() const noexcept { return domain_; }
    double operator()(double x) const { return evaluator_(x); }

private:
    std::function<double(double)> evaluator_;
    Interval domain_;
};

/// "sigmoid", "tanh", "relu" or "square" on the given domain.
SampledFunction builtin_activation(std::string_view name, Interval domain);

/// 1/2 a0 + sum_n (a_n cos(n pi x / l) + b_n sin(n pi x / l)), l = half_period.
struct FourierSeries {
    double half_period = 1.0;
    double a0 = 0.0;
    std::vector<double> a;
    std::vector<double> b;

    std::size_t length() const noexcept { return a.size(); }
};

inline constexpr std::size_t kDefaultPanels = 2048;
inline constexpr std::size_t kDefaultFourierLength = 8;

/// Fourier coefficients over [-l, l] by composite Simpson quadrature.
FourierSeries fourier_fit(const SampledFunction& f, double half_period, std::size_t length,
                          std::size_t panels = kDefaultPanels);

double fourier_eval(const FourierSeries& fs, double x);

enum class Trig { Sin, Cos };

/// First `terms` nonzero terms of the Maclaurin series of sin or cos.
UniPoly maclaurin_trig(Trig kind, unsigned terms);

/// Smallest K with u_max^(2K+1) / (2K+1)! < tolerance.
unsigned maclaurin_terms_for(double u_max, double tolerance = 1e-9);

/// Replaces every sin/cos of the series by its Maclaurin polynomial with
/// `terms` terms, composed with the argument scaling n pi / l.
///
/// Throws ConfigError when some scaled term u^m/m! at the interval edge
/// exceeds 1e15; at that size double cancellation destroys the result and
/// lsq_poly_fit is the tool to use.
UniPoly fourier_to_poly(const FourierSeries& fs, unsigned terms);

/// As above with `terms` from maclaurin_terms_for(N pi).
UniPoly fourier_to_poly(const FourierSeries& fs);

/// Least-squares polynomial of the given degree over a uniform grid. The fit
/// is done in a Chebyshev basis on t in [-1, 1] and converted back to
/// monomial coefficients in x.
UniPoly lsq_poly_fit(const SampledFunction& f, Interval interval, unsigned degree, std::size_t gridpoints);

struct ApproxError {
    double max_abs;
    double rmse;
};

ApproxError approx_error(const SampledFunction& f, const UniPoly& p, Interval interval, std::size_t gridpoints);

/// gridpoints evenly spaced abscissae covering [lo, hi] inclusive.
std::vector<double> uniform_grid(Interval interval, std::size_t gridpoints);

}  // namespace superplane
