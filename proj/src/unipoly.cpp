#include "superplane/unipoly.hpp"

#include <algorithm>
#include <utility>

namespace superplane {

UniPoly::UniPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

UniPoly UniPoly::monomial(unsigned k, double coefficient) {
    std::vector<double> c(k + 1, 0.0);
    c[k] = coefficient;
    return UniPoly(std::move(c));
}

double UniPoly::operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly operator+(const UniPoly& p, const UniPoly& q) {
    std::vector<double> c(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i] + q[i];
    return UniPoly(std::move(c));
}

UniPoly operator*(double s, const UniPoly& p) {
    std::vector<double> c = p.coeffs();
    for (double& v : c) v *= s;
    return UniPoly(std::move(c));
}

UniPoly rescale_argument(const UniPoly& p, double s) {
    std::vector<double> c = p.coeffs();
    double scale = 1.0;
    for (double& v : c) {
        v *= scale;
        scale *= s;
    }
    return UniPoly(std::move(c));
}

UniPoly substitute_affine(const UniPoly& p, double alpha, double beta) {
    // Horner in polynomial arithmetic: acc = acc*(alpha + beta x) + c_i.
    std::vector<double> acc{0.0};
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        std::vector<double> next(acc.size() + 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] += alpha * acc[i];
            next[i + 1] += beta * acc[i];
        }
        next[0] += *it;
        acc = std::move(next);
    }
    return UniPoly(std::move(acc));
}

}  // namespace superplane
