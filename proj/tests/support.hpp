#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "superplane/io.hpp"
#include "superplane/multipoly.hpp"
#include "superplane/network.hpp"

namespace testing {

namespace sp = superplane;

inline std::filesystem::path data_dir() { return SUPERPLANE_DATA_DIR; }

inline sp::Dataset table1() { return sp::io::load_dataset(data_dir() / "table1.csv"); }

inline sp::NetworkSpec published(int experiment) {
    return sp::io::load_network(data_dir() / ("exp" + std::to_string(experiment) + "_published.json"));
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Largest coefficient gap over the union of both supports.
inline double coefficient_gap(const sp::MultiPoly& p, const sp::MultiPoly& q) {
    double gap = 0.0;
    for (const auto& [e, c] : p.terms()) gap = std::max(gap, std::fabs(c - q.coefficient(e)));
    for (const auto& [e, c] : q.terms()) gap = std::max(gap, std::fabs(c - p.coefficient(e)));
    return gap;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::vector<double> point(std::size_t d, double lo = -1.0, double hi = 1.0) {
        std::vector<double> x(d);
        for (auto& v : x) v = uniform(lo, hi);
        return x;
    }

    sp::MultiPoly poly(std::size_t nvars, unsigned max_degree, int max_terms) {
        sp::MultiPoly p(nvars);
        const int n = integer(0, max_terms);
        for (int t = 0; t < n; ++t) {
            sp::Exponents e(nvars, 0);
            unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(max_degree)));
            for (auto& x : e) {
                x = static_cast<unsigned>(integer(0, static_cast<int>(budget)));
                budget -= x;
            }
            p.add_term(e, uniform(-2.0, 2.0));
        }
        return p;
    }

    sp::Activation activation() {
        switch (integer(0, 3)) {
            case 0: return sp::Activation::identity();
            case 1: return sp::Activation::power(2);
            case 2: return sp::Activation::power(3);
            default: {
                std::vector<double> c(static_cast<std::size_t>(integer(1, 4)) + 1);
                for (auto& v : c) v = uniform(-1.0, 1.0);
                return sp::Activation::poly(sp::UniPoly(c));
            }
        }
    }

    // <= 3 layers, width <= 5, d <= 3; resamples activations until the
    // attainable degree is at most max_degree.
    sp::NetworkSpec network(unsigned max_degree = 32) {
        const std::size_t d = static_cast<std::size_t>(integer(1, 3));
        const int depth = integer(1, 3);
        std::vector<sp::LayerSpec> layers;
        std::size_t in = d;
        unsigned degree = 1;
        for (int l = 0; l < depth; ++l) {
            const std::size_t out = static_cast<std::size_t>(integer(1, 5));
            Eigen::MatrixXd w(out, in + 1);
            for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = uniform(-1.0, 1.0);
            sp::Activation act = activation();
            while (degree * act.degree() > max_degree) act = activation();
            degree *= act.degree();
            layers.push_back({w, act});
            in = out;
        }
        return sp::NetworkSpec(d, std::move(layers));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testing
