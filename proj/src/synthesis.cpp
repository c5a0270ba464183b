#include "superplane/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "superplane/error.hpp"

namespace superplane {

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

std::string monomial_name(const Exponents& e) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (any) os << '*';
        os << 'x' << (j + 1);
        if (e[j] > 1) os << '^' << e[j];
        any = true;
    }
    if (!any) os << '1';
    return os.str();
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Eigen::VectorXd random_start(std::size_t n, double scale, std::uint64_t seed, std::size_t attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    Eigen::VectorXd w(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = scale * (2.0 * unit_uniform(rng) - 1.0);
    return w;
}

struct Attempt {
    Eigen::VectorXd w;
    SolveReport report;
};

Attempt levenberg_marquardt(const ResidualSystem& sys, Eigen::VectorXd w, const SolverConfig& cfg) {
    Attempt out;
    Eigen::VectorXd f = sys(w);
    const auto p = w.size();
    double lambda = cfg.damping;
    double cost = f.squaredNorm();
    std::size_t iter = 0;

    for (; iter < cfg.max_iters; ++iter) {
        if (!(inf_norm(f) > cfg.tol_residual)) break;
        const Eigen::MatrixXd jac = residual_jacobian(sys, w, cfg.fd_step);
        const auto m = jac.rows();

        bool accepted = false;
        double step_norm = 0.0;
        while (lambda < 1e20) {
            // Damped normal equations (J^T J + lambda I) d = -J^T F, solved as
            // the equivalent stacked least-squares problem for stability.
            Eigen::MatrixXd stacked(m + p, p);
            stacked << jac, std::sqrt(lambda) * Eigen::MatrixXd::Identity(p, p);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + p);
            rhs.head(m) = -f;
            const Eigen::VectorXd step = stacked.colPivHouseholderQr().solve(rhs);
            step_norm = step.norm();

            const Eigen::VectorXd w_try = w + step;
            const Eigen::VectorXd f_try = sys(w_try);
            const double cost_try = f_try.squaredNorm();
            if (f_try.allFinite() && cost_try < cost) {
                w = w_try;
                f = f_try;
                cost = cost_try;
                lambda = std::max(lambda / 10.0, 1e-15);
                accepted = true;
                break;
            }
            lambda *= 10.0;
            if (step_norm < 1e-14) break;
        }
        if (cfg.trace != nullptr) {
            *cfg.trace << iter + 1 << ", " << inf_norm(f) << ", " << lambda << ", " << step_norm << '\n';
        }
        if (!accepted || step_norm < 1e-14) {
            ++iter;
            break;
        }
    }

    out.w = std::move(w);
    out.report.iterations = iter;
    out.report.final_residual_norm = inf_norm(f);
    out.report.converged = out.report.final_residual_norm <= cfg.tol_residual;
    return out;
}

Attempt dogleg(const ResidualSystem& sys, Eigen::VectorXd w, const SolverConfig& cfg) {
    Attempt out;
    Eigen::VectorXd f = sys(w);
    double cost = f.squaredNorm();
    double radius = cfg.initial_radius;
    std::size_t iter = 0;

    for (; iter < cfg.max_iters; ++iter) {
        if (!(inf_norm(f) > cfg.tol_residual)) break;
        const Eigen::MatrixXd jac = residual_jacobian(sys, w, cfg.fd_step);
        // Minimum-norm Gauss-Newton step; covers m < p without special casing.
        const Eigen::VectorXd gauss_newton = -jac.completeOrthogonalDecomposition().solve(f);
        const Eigen::VectorXd grad = jac.transpose() * f;
        const double curvature = (jac * grad).squaredNorm();
        const Eigen::VectorXd cauchy =
            curvature > 0.0 ? Eigen::VectorXd(-(grad.squaredNorm() / curvature) * grad) : Eigen::VectorXd(-grad);

        bool accepted = false;
        double step_norm = 0.0;
        while (radius >= 1e-14) {
            Eigen::VectorXd step;
            if (gauss_newton.norm() <= radius) {
                step = gauss_newton;
            } else if (cauchy.norm() >= radius) {
                step = (radius / cauchy.norm()) * cauchy;
            } else {
                // Walk from the Cauchy point toward Gauss-Newton until |step| = radius.
                const Eigen::VectorXd dir = gauss_newton - cauchy;
                const double a = dir.squaredNorm();
                const double b = 2.0 * cauchy.dot(dir);
                const double c = cauchy.squaredNorm() - radius * radius;
                const double t = (-b + std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
                step = cauchy + t * dir;
            }
            step_norm = step.norm();

            const Eigen::VectorXd w_try = w + step;
            const Eigen::VectorXd f_try = sys(w_try);
            const double cost_try = f_try.allFinite() ? f_try.squaredNorm() : std::numeric_limits<double>::infinity();
            const double predicted = cost - (f + jac * step).squaredNorm();
            const double ratio = predicted > 0.0 ? (cost - cost_try) / predicted : -1.0;
            if (ratio < 0.25) {
                radius = 0.5 * step_norm;
            } else if (ratio > 0.75 && step_norm > 0.99 * radius) {
                radius *= 2.0;
            }
            if (cost_try < cost) {
                w = w_try;
                f = f_try;
                cost = cost_try;
                accepted = true;
                break;
            }
            if (step_norm < 1e-14) break;
        }
        if (cfg.trace != nullptr) {
            *cfg.trace << iter + 1 << ", " << inf_norm(f) << ", " << radius << ", " << step_norm << '\n';
        }
        if (!accepted || step_norm < 1e-14) {
            ++iter;
            break;
        }
    }

    out.w = std::move(w);
    out.report.iterations = iter;
    out.report.final_residual_norm = inf_norm(f);
    out.report.converged = out.report.final_residual_norm <= cfg.tol_residual;
    return out;
}

Attempt run_attempt(const ResidualSystem& sys, Eigen::VectorXd w, const SolverConfig& cfg) {
    return cfg.method == SolverMethod::Dogleg ? dogleg(sys, std::move(w), cfg)
                                              : levenberg_marquardt(sys, std::move(w), cfg);
}

void require_finite_start(const ResidualSystem& sys, const Eigen::VectorXd& w) {
    if (!w.allFinite()) throw NumericError("initial point is not finite");
    if (!sys(w).allFinite()) throw NumericError("residual is not finite at the initial point");
}

}  // namespace

UnknownLayout UnknownLayout::for_network(const NetworkSpec& arch) {
    UnknownLayout layout;
    for (std::size_t l = 0; l < arch.layers().size(); ++l) {
        const auto& w = arch.layers()[l].weights;
        for (std::size_t r = 0; r < static_cast<std::size_t>(w.rows()); ++r) {
            for (std::size_t c = 0; c < static_cast<std::size_t>(w.cols()); ++c) layout.slots_.push_back({l, r, c});
        }
    }
    return layout;
}

ResidualSystem::ResidualSystem(UnknownLayout layout, std::vector<std::string> description, Evaluator evaluator)
    : layout_(std::move(layout)), description_(std::move(description)), evaluator_(std::move(evaluator)) {
    if (description_.empty()) throw UsageError("residual system needs at least one residual");
}

Eigen::VectorXd ResidualSystem::operator()(const Eigen::VectorXd& w) const {
    if (static_cast<std::size_t>(w.size()) != unknowns()) {
        throw DimensionError("residual system expects " + std::to_string(unknowns()) + " unknowns, got " +
                             std::to_string(w.size()));
    }
    return evaluator_(w);
}

MultiPoly target_sp_classification(const Dataset& ds, double label) {
    const std::size_t d = ds.features();
    MultiPoly product = MultiPoly::constant(d, 1.0);
    bool any = false;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        if (ds.y[i] != label) continue;
        any = true;
        // sum_j (f_j - x_ij)^2; the f0 = x_i0 = 1 term is identically zero.
        MultiPoly dist(d);
        for (std::size_t j = 0; j < d; ++j) {
            AffineForm diff{-ds.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), std::vector<double>(d, 0.0)};
            diff.linear[j] = 1.0;
            dist += affine_power(diff, 2);
        }
        product = poly_mul(product, dist);
    }
    if (!any) {
        std::ostringstream os;
        os << "no example carries label " << label;
        throw UsageError(os.str());
    }
    return -product;
}

ResidualSystem build_coefficient_system(const NetworkSpec& arch, const std::vector<MultiPoly>& targets) {
    const std::size_t outputs = arch.output_dim();
    if (targets.size() != outputs) {
        throw UsageError("network has " + std::to_string(outputs) + " outputs but " + std::to_string(targets.size()) +
                         " targets were given");
    }
    const unsigned attainable = arch.attainable_degree();
    for (std::size_t k = 0; k < outputs; ++k) {
        if (targets[k].nvars() != arch.input_dim()) {
            throw DimensionError("target " + std::to_string(k) + " has " + std::to_string(targets[k].nvars()) +
                                 " variables, network has " + std::to_string(arch.input_dim()) + " inputs");
        }
        if (targets[k].degree() > static_cast<int>(attainable)) {
            throw UsageError("target " + std::to_string(k) + " has degree " + std::to_string(targets[k].degree()) +
                             " but the architecture attains only degree " + std::to_string(attainable));
        }
    }

    // The expansion support is structural: take it at two generic weight
    // draws so that it does not depend on the values stored in `arch`.
    const std::size_t p = arch.weight_count();
    std::vector<std::set<Exponents, GradedLexLess>> support(outputs);
    for (std::size_t draw = 0; draw < 2; ++draw) {
        Eigen::VectorXd w = random_start(p, 1.0, 0x5eedULL, draw);
        for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::copysign(0.25 + std::abs(w[i]), w[i]);
        const auto polys = expand_network(arch.with_weights({w.data(), static_cast<std::size_t>(w.size())}));
        for (std::size_t k = 0; k < outputs; ++k) {
            for (const auto& [e, c] : polys[k].terms()) support[k].insert(e);
        }
    }
    for (std::size_t k = 0; k < outputs; ++k) {
        for (const auto& [e, c] : targets[k].terms()) support[k].insert(e);
    }

    std::vector<std::string> description;
    std::vector<std::vector<Exponents>> monomials(outputs);
    for (std::size_t k = 0; k < outputs; ++k) {
        for (const auto& e : support[k]) {
            monomials[k].push_back(e);
            description.push_back("output " + std::to_string(k) + " coeff " + monomial_name(e));
        }
    }

    auto evaluator = [arch, targets, monomials](const Eigen::VectorXd& w) {
        const auto polys = expand_network(arch.with_weights({w.data(), static_cast<std::size_t>(w.size())}));
        std::size_t total = 0;
        for (const auto& m : monomials) total += m.size();
        Eigen::VectorXd r(static_cast<Eigen::Index>(total));
        Eigen::Index i = 0;
        for (std::size_t k = 0; k < monomials.size(); ++k) {
            for (const auto& e : monomials[k]) r[i++] = polys[k].coefficient(e) - targets[k].coefficient(e);
        }
        return r;
    };
    return ResidualSystem(UnknownLayout::for_network(arch), std::move(description), std::move(evaluator));
}

ResidualSystem build_data_system(const NetworkSpec& arch, const Dataset& ds) {
    if (arch.output_dim() != 1) {
        throw UsageError("data system needs a single-output network, got " + std::to_string(arch.output_dim()) +
                         " outputs");
    }
    if (ds.features() != arch.input_dim()) {
        throw DimensionError("dataset has " + std::to_string(ds.features()) + " features, network expects " +
                             std::to_string(arch.input_dim()));
    }
    std::vector<std::string> description;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        description.push_back("row " + std::to_string(i + 1));
        rows.push_back(ds.row(i));
    }
    auto evaluator = [arch, rows, y = ds.y](const Eigen::VectorXd& w) {
        const NetworkSpec net = arch.with_weights({w.data(), static_cast<std::size_t>(w.size())});
        Eigen::VectorXd r(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) r[static_cast<Eigen::Index>(i)] = forward(net, rows[i])[0] - y[i];
        return r;
    };
    return ResidualSystem(UnknownLayout::for_network(arch), std::move(description), std::move(evaluator));
}

Eigen::MatrixXd residual_jacobian(const ResidualSystem& sys, const Eigen::VectorXd& w, double fd_step) {
    const Eigen::VectorXd f0 = sys(w);
    Eigen::MatrixXd jac(f0.size(), w.size());
    Eigen::VectorXd probe = w;
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        const double h = fd_step * (1.0 + std::abs(w[j]));
        probe[j] = w[j] + h;
        jac.col(j) = (sys(probe) - f0) / h;
        probe[j] = w[j];
    }
    return jac;
}

SolveResult solve_system(const ResidualSystem& sys, const SolverConfig& cfg) {
    const std::size_t p = sys.unknowns();
    std::vector<Attempt> attempts;
    std::size_t random_attempts = 0;

    if (cfg.initial != InitialGuess::RandomRestarts) {
        Eigen::VectorXd start;
        if (cfg.initial == InitialGuess::Ones) {
            start = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(p));
        } else {
            if (cfg.given.size() != p) {
                throw ConfigError("initial vector has " + std::to_string(cfg.given.size()) + " entries, system has " +
                                  std::to_string(p) + " unknowns");
            }
            start = Eigen::Map<const Eigen::VectorXd>(cfg.given.data(), static_cast<Eigen::Index>(p));
        }
        require_finite_start(sys, start);
        attempts.push_back(run_attempt(sys, std::move(start), cfg));
    }

    while (!(attempts.size() > 0 && attempts.back().report.converged) && random_attempts < cfg.restarts) {
        Eigen::VectorXd start = random_start(p, cfg.restart_scale, cfg.seed, random_attempts);
        ++random_attempts;
        if (!sys(start).allFinite()) continue;
        attempts.push_back(run_attempt(sys, std::move(start), cfg));
    }
    if (attempts.empty()) throw NumericError("no restart produced a finite initial residual");

    auto chosen = std::find_if(attempts.begin(), attempts.end(), [](const Attempt& a) { return a.report.converged; });
    if (chosen == attempts.end()) {
        chosen = std::min_element(attempts.begin(), attempts.end(), [](const Attempt& a, const Attempt& b) {
            return a.report.final_residual_norm < b.report.final_residual_norm;
        });
    }
    SolveResult result{std::move(chosen->w), chosen->report};
    result.report.restarts_used = random_attempts;
    return result;
}

CompressResult compress_network(const NetworkSpec& teacher, const NetworkSpec& student_arch, unsigned degree,
                                const SolverConfig& cfg) {
    if (teacher.input_dim() != student_arch.input_dim()) {
        throw DimensionError("teacher and student input dimensions differ");
    }
    std::vector<MultiPoly> targets;
    for (const auto& p : expand_network(teacher)) targets.push_back(truncate_degree(p, degree));
    const ResidualSystem sys = build_coefficient_system(student_arch, targets);
    SolveResult solved = solve_system(sys, cfg);
    const auto& w = solved.weights;
    return {student_arch.with_weights({w.data(), static_cast<std::size_t>(w.size())}), solved.report};
}

}  // namespace superplane
