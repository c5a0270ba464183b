#pragma once

#include <Eigen/Dense>

#include "superplane/synthesis.hpp"

namespace testing {

// Central differences with step h*(1+|w_j|), second-order accurate.
inline Eigen::MatrixXd central_jacobian(const superplane::ResidualSystem& sys, const Eigen::VectorXd& w,
                                        double h = 1e-6) {
    Eigen::MatrixXd J(static_cast<Eigen::Index>(sys.arity()), w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        const double step = h * (1.0 + std::abs(w(j)));
        Eigen::VectorXd plus = w, minus = w;
        plus(j) += step;
        minus(j) -= step;
        J.col(j) = (sys(plus) - sys(minus)) / (2.0 * step);
    }
    return J;
}

}  // namespace testing
