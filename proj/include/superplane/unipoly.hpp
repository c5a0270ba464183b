#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace superplane {

/// Dense univariate polynomial, coeffs()[i] multiplies x^i.
///
/// Trailing zeros are trimmed on construction; the zero polynomial is stored
/// as the single coefficient 0 and reports degree 0.
class UniPoly {
public:
    UniPoly() : coeffs_{0.0} {}
    explicit UniPoly(std::vector<double> coeffs);
    UniPoly(std::initializer_list<double> coeffs) : UniPoly(std::vector<double>(coeffs)) {}

    static UniPoly monomial(unsigned k, double coefficient = 1.0);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0.0; }

    /// Horner evaluation.
    double operator()(double x) const noexcept;

    friend bool operator==(const UniPoly&, const UniPoly&) = default;

private:
    std::vector<double> coeffs_;
};

UniPoly operator+(const UniPoly& p, const UniPoly& q);
UniPoly operator*(double s, const UniPoly& p);

/// p(s*x): coefficient i is scaled by s^i.
UniPoly rescale_argument(const UniPoly& p, double s);

/// p(alpha + beta*x), expanded back into monomial coefficients.
UniPoly substitute_affine(const UniPoly& p, double alpha, double beta);

}  // namespace superplane
