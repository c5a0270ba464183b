#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "superplane/multipoly.hpp"
#include "superplane/unipoly.hpp"

namespace superplane {

/// Elementwise activation: identity, x^k, or an arbitrary polynomial.
class Activation {
public:
    enum class Kind { Identity, Power, Poly };

    static Activation identity() { return Activation(Kind::Identity, 1, UniPoly{0.0, 1.0}); }
    static Activation power(unsigned k);
    static Activation poly(UniPoly p) { return Activation(Kind::Poly, 0, std::move(p)); }

    Kind kind() const noexcept { return kind_; }
    unsigned exponent() const noexcept { return k_; }
    /// The activation written as a univariate polynomial.
    const UniPoly& as_unipoly() const noexcept { return poly_; }
    unsigned degree() const noexcept;

    double operator()(double x) const noexcept;

    friend bool operator==(const Activation&, const Activation&) = default;

private:
    Activation(Kind kind, unsigned k, UniPoly p) : kind_(kind), k_(k), poly_(std::move(p)) {}

    Kind kind_;
    unsigned k_;
    UniPoly poly_;
};

/// Fully connected layer. weights is out_nodes x (1 + in_nodes); column 0
/// holds the bias, i.e. the weight on the constant "1" node.
struct LayerSpec {
    Eigen::MatrixXd weights;
    Activation activation = Activation::identity();

    std::size_t out_nodes() const noexcept { return static_cast<std::size_t>(weights.rows()); }
    std::size_t in_nodes() const noexcept { return weights.cols() > 0 ? static_cast<std::size_t>(weights.cols()) - 1 : 0; }
};

/// Layered feedforward network. Construction validates that layer widths
/// chain and that every weight is finite; the object is immutable afterwards.
class NetworkSpec {
public:
    NetworkSpec(std::size_t input_dim, std::vector<LayerSpec> layers);

    std::size_t input_dim() const noexcept { return input_dim_; }
    std::size_t output_dim() const noexcept { return layers_.back().out_nodes(); }
    const std::vector<LayerSpec>& layers() const noexcept { return layers_; }

    /// Total degree reachable by the symbolic expansion: the product of the
    /// per-layer activation degrees.
    unsigned attainable_degree() const noexcept;

    /// Total number of weight slots, biases included.
    std::size_t weight_count() const noexcept;

    /// Same architecture with every weight replaced, layer-major then
    /// row-major order.
    NetworkSpec with_weights(std::span<const double> flat) const;
    std::vector<double> flat_weights() const;

private:
    std::size_t input_dim_;
    std::vector<LayerSpec> layers_;
};

/// n examples of d features; the constant feature f0 = 1 is implicit.
struct Dataset {
    Eigen::MatrixXd X;
    std::vector<double> y;

    Dataset(Eigen::MatrixXd features, std::vector<double> targets);

    std::size_t rows() const noexcept { return y.size(); }
    std::size_t features() const noexcept { return static_cast<std::size_t>(X.cols()); }
    std::vector<double> row(std::size_t i) const;
};

std::vector<double> forward(const NetworkSpec& net, std::span<const double> x);

/// One polynomial per output node, in output order.
std::vector<MultiPoly> expand_network(const NetworkSpec& net);

/// Index of the largest output; ties go to the lowest index.
std::size_t classify(const NetworkSpec& net, std::span<const double> x);

}  // namespace superplane
