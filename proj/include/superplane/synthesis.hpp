#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superplane/multipoly.hpp"
#include "superplane/network.hpp"

namespace superplane {

struct WeightSlot {
    std::size_t layer;
    std::size_t row;
    std::size_t col;

    friend bool operator==(const WeightSlot&, const WeightSlot&) = default;
};

/// Maps positions of the flat unknown vector onto weight slots, layer-major
/// then row-major (the order NetworkSpec::flat_weights uses).
class UnknownLayout {
public:
    static UnknownLayout for_network(const NetworkSpec& arch);

    const std::vector<WeightSlot>& slots() const noexcept { return slots_; }
    std::size_t total_unknowns() const noexcept { return slots_.size(); }

private:
    std::vector<WeightSlot> slots_;
};

/// Vector-valued function of the flat weight vector whose roots are the
/// synthesized weights.
class ResidualSystem {
public:
    using Evaluator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    ResidualSystem(UnknownLayout layout, std::vector<std::string> description, Evaluator evaluator);

    const UnknownLayout& layout() const noexcept { return layout_; }
    std::size_t unknowns() const noexcept { return layout_.total_unknowns(); }
    std::size_t arity() const noexcept { return description_.size(); }
    /// Provenance of each residual: which monomial or which data row.
    const std::vector<std::string>& description() const noexcept { return description_; }

    Eigen::VectorXd operator()(const Eigen::VectorXd& w) const;

private:
    UnknownLayout layout_;
    std::vector<std::string> description_;
    Evaluator evaluator_;
};

enum class InitialGuess { Ones, Given, RandomRestarts };

/// Dogleg is Powell's trust-region method on the Gauss-Newton model (the
/// family fsolve uses); LevenbergMarquardt adapts lambda x10 / /10.
enum class SolverMethod { Dogleg, LevenbergMarquardt };

struct SolverConfig {
    std::size_t max_iters = 500;
    double tol_residual = 1e-10;  // on the residual infinity norm
    InitialGuess initial = InitialGuess::Ones;
    std::vector<double> given;    // used when initial == Given
    std::size_t restarts = 16;    // random attempts after the first start fails
    double restart_scale = 1.0;   // draws are uniform in (-scale, scale)
    std::uint64_t seed = 0;
    SolverMethod method = SolverMethod::Dogleg;
    double damping = 1e-3;        // initial Levenberg-Marquardt lambda
    double initial_radius = 0.1;  // initial dogleg trust radius
    double fd_step = 1e-7;        // relative forward-difference step
    std::ostream* trace = nullptr;  // per-iteration log when set
};

struct SolveReport {
    bool converged = false;
    std::size_t iterations = 0;
    double final_residual_norm = 0.0;
    std::size_t restarts_used = 0;
};

struct SolveResult {
    Eigen::VectorXd weights;
    SolveReport report;
};

/// Class polynomial: minus the product, over the examples carrying `label`,
/// of the squared distance sum_j (f_j - x_ij)^2.
MultiPoly target_sp_classification(const Dataset& ds, double label);

/// Undetermined-coefficients system: one residual per (output, monomial) in
/// the union of the network's generic expansion support and the target
/// support, ordered output-major then graded-lex. The weights stored in
/// `arch` are ignored.
ResidualSystem build_coefficient_system(const NetworkSpec& arch, const std::vector<MultiPoly>& targets);

/// One residual per example: forward(arch(w), x_i) - y_i.
ResidualSystem build_data_system(const NetworkSpec& arch, const Dataset& ds);

/// Forward-difference Jacobian with step fd_step * (1 + |w_j|).
Eigen::MatrixXd residual_jacobian(const ResidualSystem& sys, const Eigen::VectorXd& w, double fd_step = 1e-7);

/// Minimizes 0.5*|F(w)|^2 from the configured start, then from seeded random
/// starts until one converges. Returns the first converged attempt, or the
/// attempt with the smallest residual when none does.
SolveResult solve_system(const ResidualSystem& sys, const SolverConfig& cfg = {});

struct CompressResult {
    NetworkSpec student;
    SolveReport report;
};

/// Fits the student so that its expansion matches the teacher's expansion
/// truncated to `degree`, output by output.
CompressResult compress_network(const NetworkSpec& teacher, const NetworkSpec& student_arch, unsigned degree,
                                const SolverConfig& cfg = {});

}  // namespace superplane
