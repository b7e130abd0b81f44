#pragma once

#include "rtsf/series.hpp"

#include <utility>
#include <vector>

namespace rtsf {

enum class Fidelity { L1, L2 };

struct TrendConfig {
    double lambda = 0.3;
    Fidelity fidelity = Fidelity::L1;
    int max_iter = 2000;
    double abs_tol = 1e-6;
    double rel_tol = 1e-4;
    double rho = 1.0; // ADMM splitting penalty

    void validate() const;
};

struct TrendSolution {
    std::vector<double> trend;
    double objective = 0.0;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;
};

// Objective of the filtering problem at s: sum_t phi(z_t - s_t) plus
// lambda * sum |s_{t-1} - 2 s_t + s_{t+1}|, with phi = |.| (L1) or (.)^2 (L2).
double trend_objective(std::span<const double> z, std::span<const double> s, double lambda,
                       Fidelity fidelity);

// ADMM solver with variable splitting on the fidelity residual and the
// second difference; both proximal steps are soft-thresholding and the
// s-update solves a pentadiagonal system factored once. Returns the best
// iterate found; converged=false when max_iter is exhausted first.
TrendSolution fit_trend(const TimeSeries& z, const TrendConfig& cfg);

// Exact minimizer of the L1/L1 objective by linear-program reformulation
// (every absolute value split into a nonnegative slack pair), solved with a
// self-contained dense simplex. Verification oracle; capped at T <= 64.
std::pair<std::vector<double>, double> lp_oracle(const TimeSeries& z, double lambda);

// One training sample of the selection pipeline: an input window, the trend
// slice aligned index-for-index with it, and the label.
struct WindowTriplet {
    std::vector<double> input;
    std::vector<double> trend;
    std::vector<double> label;
};

// Slice a fitted trend to match each window of the dataset. The trend must
// come from the same parent series (same length coverage).
std::vector<WindowTriplet> trend_windows(const SupervisedDataset& dataset,
                                         const std::vector<double>& trend);

} // namespace rtsf
