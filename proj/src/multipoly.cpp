#include "superplane/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "superplane/error.hpp"

namespace superplane {

namespace {

void require_same_nvars(const MultiPoly& p, const MultiPoly& q, const char* op) {
    if (p.nvars() != q.nvars()) {
        throw DimensionError(std::string(op) + ": variable count mismatch (" + std::to_string(p.nvars()) +
                             " vs " + std::to_string(q.nvars()) + ")");
    }
}

}  // namespace

unsigned total_degree(const Exponents& e) noexcept { return std::accumulate(e.begin(), e.end(), 0u); }

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const noexcept {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double AffineForm::operator()(std::span<const double> x) const {
    if (x.size() != linear.size()) {
        throw DimensionError("affine form expects " + std::to_string(linear.size()) + " coordinates, got " +
                             std::to_string(x.size()));
    }
    double v = constant;
    for (std::size_t j = 0; j < x.size(); ++j) v += linear[j] * x[j];
    return v;
}

MultiPoly::MultiPoly(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0) throw DimensionError("polynomial needs at least one variable");
}

MultiPoly::MultiPoly(std::size_t nvars, std::initializer_list<std::pair<Exponents, double>> terms)
    : MultiPoly(nvars) {
    for (const auto& [e, c] : terms) add_term(e, c);
}

MultiPoly MultiPoly::constant(std::size_t nvars, double c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionError("variable index out of range");
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(e, 1.0);
    return p;
}

MultiPoly MultiPoly::from_affine(const AffineForm& a) {
    MultiPoly p = constant(a.nvars(), a.constant);
    for (std::size_t j = 0; j < a.nvars(); ++j) {
        Exponents e(a.nvars(), 0);
        e[j] = 1;
        p.add_term(e, a.linear[j]);
    }
    return p;
}

int MultiPoly::degree() const noexcept {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
}

void MultiPoly::check_length(const Exponents& e) const {
    if (e.size() != nvars_) {
        throw DimensionError("exponent vector has length " + std::to_string(e.size()) + ", polynomial has " +
                             std::to_string(nvars_) + " variables");
    }
}

double MultiPoly::coefficient(const Exponents& e) const {
    check_length(e);
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

void MultiPoly::add_term(const Exponents& e, double c) {
    check_length(e);
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kZeroDropThreshold) terms_.erase(it);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& q) {
    require_same_nvars(*this, q, "poly_add");
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(double s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        if (std::abs(it->second) < kZeroDropThreshold) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

MultiPoly poly_add(const MultiPoly& p, const MultiPoly& q) {
    MultiPoly r = p;
    r += q;
    return r;
}

MultiPoly poly_mul(const MultiPoly& p, const MultiPoly& q) {
    require_same_nvars(p, q, "poly_mul");
    const std::size_t n = p.nvars();
    // Accumulate without the drop rule so that partial sums passing through
    // zero are not lost, then canonicalize once.
    MultiPoly::TermMap acc;
    Exponents e(n);
    for (const auto& [ep, cp] : p.terms()) {
        for (const auto& [eq, cq] : q.terms()) {
            for (std::size_t j = 0; j < n; ++j) e[j] = ep[j] + eq[j];
            acc[e] += cp * cq;
        }
    }
    MultiPoly r(n);
    for (const auto& [ex, c] : acc) r.add_term(ex, c);
    return r;
}

MultiPoly operator*(double s, const MultiPoly& p) {
    MultiPoly r = p;
    r *= s;
    return r;
}

MultiPoly operator-(const MultiPoly& p) { return -1.0 * p; }

MultiPoly operator-(const MultiPoly& p, const MultiPoly& q) { return poly_add(p, -q); }

MultiPoly poly_pow(const MultiPoly& p, unsigned k) {
    MultiPoly result = MultiPoly::constant(p.nvars(), 1.0);
    MultiPoly base = p;
    while (k > 0) {
        if (k & 1u) result = poly_mul(result, base);
        k >>= 1u;
        if (k > 0) base = poly_mul(base, base);
    }
    return result;
}

MultiPoly affine_power(const AffineForm& a, unsigned k) { return poly_pow(MultiPoly::from_affine(a), k); }

MultiPoly apply_univariate(const UniPoly& phi, const MultiPoly& p) {
    const auto& c = phi.coeffs();
    MultiPoly result = MultiPoly::constant(p.nvars(), c[0]);
    MultiPoly power = MultiPoly::constant(p.nvars(), 1.0);
    for (std::size_t i = 1; i < c.size(); ++i) {
        power = poly_mul(power, p);
        if (c[i] != 0.0) result += c[i] * power;
    }
    return result;
}

MultiPoly apply_univariate_to_affine(const UniPoly& phi, const AffineForm& a) {
    return apply_univariate(phi, MultiPoly::from_affine(a));
}

double poly_eval(const MultiPoly& p, std::span<const double> x) {
    if (x.size() != p.nvars()) {
        throw DimensionError("poly_eval: point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                             std::to_string(p.nvars()) + " variables");
    }
    if (p.is_zero()) return 0.0;
    const auto max_deg = static_cast<std::size_t>(p.degree());
    // powers[j][k] = x_j^k
    std::vector<std::vector<double>> powers(x.size(), std::vector<double>(max_deg + 1, 1.0));
    for (std::size_t j = 0; j < x.size(); ++j) {
        for (std::size_t k = 1; k <= max_deg; ++k) powers[j][k] = powers[j][k - 1] * x[j];
    }
    double sum = 0.0;
    for (const auto& [e, c] : p.terms()) {
        double term = c;
        for (std::size_t j = 0; j < e.size(); ++j) term *= powers[j][e[j]];
        sum += term;
    }
    return sum;
}

MultiPoly truncate_degree(const MultiPoly& p, unsigned max_degree) {
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (total_degree(e) > max_degree) break;  // graded order
        r.add_term(e, c);
    }
    return r;
}

double coefficient(const MultiPoly& p, const Exponents& e) { return p.coefficient(e); }

std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned max_degree) {
    std::vector<Exponents> out;
    Exponents e(nvars, 0);
    // Odometer over [0, max_degree]^nvars, keeping those within the degree bound.
    while (true) {
        if (total_degree(e) <= max_degree) out.push_back(e);
        std::size_t j = 0;
        while (j < nvars) {
            if (++e[j] <= max_degree) break;
            e[j] = 0;
            ++j;
        }
        if (j == nvars) break;
    }
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

}  // namespace superplane
