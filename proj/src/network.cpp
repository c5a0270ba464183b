#include "superplane/network.hpp"

#include <cmath>
#include <string>

#include "superplane/error.hpp"

namespace superplane {

Activation Activation::power(unsigned k) {
    if (k == 0) throw ConfigError("power activation needs a positive exponent");
    return Activation(Kind::Power, k, UniPoly::monomial(k));
}

unsigned Activation::degree() const noexcept {
    switch (kind_) {
        case Kind::Identity: return 1;
        case Kind::Power: return k_;
        case Kind::Poly: return static_cast<unsigned>(poly_.degree());
    }
    return 0;
}

double Activation::operator()(double x) const noexcept {
    switch (kind_) {
        case Kind::Identity: return x;
        case Kind::Power: {
            double v = 1.0;
            for (unsigned i = 0; i < k_; ++i) v *= x;
            return v;
        }
        case Kind::Poly: return poly_(x);
    }
    return x;
}

NetworkSpec::NetworkSpec(std::size_t input_dim, std::vector<LayerSpec> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
    if (input_dim_ == 0) throw StructuralError("network input_dim must be positive");
    if (layers_.empty()) throw StructuralError("network needs at least one layer");
    std::size_t width = input_dim_;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& w = layers_[l].weights;
        const std::string where = "layer " + std::to_string(l) + ": ";
        if (w.rows() < 1) throw StructuralError(where + "needs at least one output node");
        if (static_cast<std::size_t>(w.cols()) != width + 1) {
            throw StructuralError(where + "weights have " + std::to_string(w.cols()) + " columns, expected " +
                                  std::to_string(width + 1) + " (bias + " + std::to_string(width) + " inputs)");
        }
        if (!w.allFinite()) throw StructuralError(where + "non-finite weight");
        width = static_cast<std::size_t>(w.rows());
    }
}

unsigned NetworkSpec::attainable_degree() const noexcept {
    unsigned d = 1;
    for (const auto& layer : layers_) d *= layer.activation.degree();
    return d;
}

std::size_t NetworkSpec::weight_count() const noexcept {
    std::size_t n = 0;
    for (const auto& layer : layers_) n += static_cast<std::size_t>(layer.weights.size());
    return n;
}

NetworkSpec NetworkSpec::with_weights(std::span<const double> flat) const {
    if (flat.size() != weight_count()) {
        throw DimensionError("expected " + std::to_string(weight_count()) + " weights, got " +
                             std::to_string(flat.size()));
    }
    NetworkSpec out = *this;
    std::size_t pos = 0;
    for (auto& layer : out.layers_) {
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) layer.weights(r, c) = flat[pos++];
        }
    }
    return out;
}

std::vector<double> NetworkSpec::flat_weights() const {
    std::vector<double> flat;
    flat.reserve(weight_count());
    for (const auto& layer : layers_) {
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) flat.push_back(layer.weights(r, c));
        }
    }
    return flat;
}

Dataset::Dataset(Eigen::MatrixXd features, std::vector<double> targets) : X(std::move(features)), y(std::move(targets)) {
    if (y.empty()) throw StructuralError("dataset needs at least one example");
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw StructuralError("dataset has " + std::to_string(X.rows()) + " feature rows but " +
                              std::to_string(y.size()) + " targets");
    }
    if (X.cols() < 1) throw StructuralError("dataset needs at least one feature");
}

std::vector<double> Dataset::row(std::size_t i) const {
    std::vector<double> r(features());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return r;
}

std::vector<double> forward(const NetworkSpec& net, std::span<const double> x) {
    if (x.size() != net.input_dim()) {
        throw DimensionError("forward: expected " + std::to_string(net.input_dim()) + " inputs, got " +
                             std::to_string(x.size()));
    }
    Eigen::VectorXd act = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    for (const auto& layer : net.layers()) {
        const auto& w = layer.weights;
        Eigen::VectorXd pre = w.col(0) + w.rightCols(w.cols() - 1) * act;
        for (Eigen::Index i = 0; i < pre.size(); ++i) pre[i] = layer.activation(pre[i]);
        act = std::move(pre);
    }
    return {act.data(), act.data() + act.size()};
}

std::vector<MultiPoly> expand_network(const NetworkSpec& net) {
    const std::size_t d = net.input_dim();
    std::vector<MultiPoly> prev;
    prev.reserve(d);
    for (std::size_t j = 0; j < d; ++j) prev.push_back(MultiPoly::variable(d, j));

    for (const auto& layer : net.layers()) {
        const auto& w = layer.weights;
        std::vector<MultiPoly> next;
        next.reserve(layer.out_nodes());
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            MultiPoly pre = MultiPoly::constant(d, w(r, 0));
            for (std::size_t j = 0; j < prev.size(); ++j) {
                const double wj = w(r, static_cast<Eigen::Index>(j) + 1);
                if (wj != 0.0) pre += wj * prev[j];
            }
            switch (layer.activation.kind()) {
                case Activation::Kind::Identity: next.push_back(std::move(pre)); break;
                case Activation::Kind::Power: next.push_back(poly_pow(pre, layer.activation.exponent())); break;
                case Activation::Kind::Poly: next.push_back(apply_univariate(layer.activation.as_unipoly(), pre)); break;
            }
        }
        prev = std::move(next);
    }
    return prev;
}

std::size_t classify(const NetworkSpec& net, std::span<const double> x) {
    if (net.output_dim() < 2) throw UsageError("classify needs a network with at least 2 outputs");
    const auto out = forward(net, x);
    std::size_t best = 0;
    for (std::size_t k = 1; k < out.size(); ++k) {
        if (out[k] > out[best]) best = k;
    }
    return best;
}

}  // namespace superplane
