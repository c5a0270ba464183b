#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "superplane/multipoly.hpp"
#include "superplane/network.hpp"
#include "superplane/report.hpp"
#include "superplane/synthesis.hpp"

namespace superplane::experiments {

/// One hidden layer of `hidden` nodes with x^k activation, an identity output
/// layer, and all weights zero (placeholders for the unknowns).
NetworkSpec hidden_layer_arch(std::size_t inputs, std::size_t hidden, unsigned k, std::size_t outputs);

/// Class targets of the two-line classification problem:
/// class 0 is -(x1 - x2)^2, class 1 is -(x1 + x2 - 1)^2.
MultiPoly line_class_target(int cls);

/// The regression target 2 x1 + 2 x1 x2 + x2^2.
MultiPoly regression_target();

/// 20 points on each generator line at x1 = (i + 1/2)/20, i = 0..19; the
/// second element is the true class.
std::vector<std::pair<std::array<double, 2>, std::size_t>> line_class_points();

/// regression_target sampled on the 3x3 grid {-1, 0, 1}^2.
Dataset regression_grid_dataset();

struct ExperimentOptions {
    std::filesystem::path data_dir;
    std::uint64_t seed = 0;
    std::optional<std::size_t> max_iters;
    std::optional<double> tol_residual;
    std::ostream* trace = nullptr;
};

/// Runs experiment 1..4 and returns its check report.
ReportDocument run_experiment(int id, const ExperimentOptions& options);

}  // namespace superplane::experiments
