#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "superplane/unipoly.hpp"

namespace superplane {

/// Exponent of each input variable f1..fd in one monomial.
using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e) noexcept;

/// Graded lexicographic order: total degree ascending, then lexicographic.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const noexcept;
};

/// Coefficients whose magnitude falls below this after arithmetic are dropped.
inline constexpr double kZeroDropThreshold = 1e-15;

/// a0 + a1*x1 + ... + ad*xd
struct AffineForm {
    double constant = 0.0;
    std::vector<double> linear;

    std::size_t nvars() const noexcept { return linear.size(); }
    double operator()(std::span<const double> x) const;
};

/// Sparse multivariate polynomial in a fixed number of variables.
///
/// Terms are kept in graded-lex order and never hold a zero coefficient, so
/// iteration order (and therefore serialization) is deterministic.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, double, GradedLexLess>;

    explicit MultiPoly(std::size_t nvars);
    MultiPoly(std::size_t nvars, std::initializer_list<std::pair<Exponents, double>> terms);

    static MultiPoly constant(std::size_t nvars, double c);
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    static MultiPoly from_affine(const AffineForm& a);

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Highest total degree, or -1 for the zero polynomial.
    int degree() const noexcept;

    /// Stored coefficient, or 0 when the monomial is absent.
    double coefficient(const Exponents& e) const;

    /// Adds c to the coefficient of e, dropping the term if it cancels.
    void add_term(const Exponents& e, double c);

    MultiPoly& operator+=(const MultiPoly& q);
    MultiPoly& operator*=(double s);

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
    void check_length(const Exponents& e) const;

    std::size_t nvars_;
    TermMap terms_;
};

MultiPoly poly_add(const MultiPoly& p, const MultiPoly& q);
MultiPoly poly_mul(const MultiPoly& p, const MultiPoly& q);

inline MultiPoly operator+(const MultiPoly& p, const MultiPoly& q) { return poly_add(p, q); }
inline MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) { return poly_mul(p, q); }
MultiPoly operator*(double s, const MultiPoly& p);
MultiPoly operator-(const MultiPoly& p);
MultiPoly operator-(const MultiPoly& p, const MultiPoly& q);

/// p^k by square-and-multiply; p^0 is the constant 1.
MultiPoly poly_pow(const MultiPoly& p, unsigned k);

/// Full multinomial expansion of (a0 + a1 x1 + ... + ad xd)^k.
MultiPoly affine_power(const AffineForm& a, unsigned k);

/// sum_i c_i * p^i, the composition phi(p).
MultiPoly apply_univariate(const UniPoly& phi, const MultiPoly& p);

/// sum_i c_i * (a0 + a1 x1 + ... + ad xd)^i
MultiPoly apply_univariate_to_affine(const UniPoly& phi, const AffineForm& a);

/// Exact integer powers by repeated multiplication.
double poly_eval(const MultiPoly& p, std::span<const double> x);

/// Drops every term of total degree greater than max_degree.
MultiPoly truncate_degree(const MultiPoly& p, unsigned max_degree);

double coefficient(const MultiPoly& p, const Exponents& e);

/// Every exponent vector in nvars variables with total degree <= max_degree,
/// in graded-lex order.
std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned max_degree);

}  // namespace superplane
