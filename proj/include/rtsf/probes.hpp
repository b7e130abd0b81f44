#pragma once

#include "rtsf/anomaly.hpp"
#include "rtsf/model.hpp"

#include <cstdint>
#include <span>

namespace rtsf {

// Measured pieces of the affine risk identity R_noisy = gamma1 * R_clean +
// gamma2 under label contamination, with gamma1 expected at 1 - 2*eta.
struct LossAudit {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double c_x_mean = 0.0;
    double gamma1_stderr = 0.0;
};

struct IdentityAudit {
    double c_x = 0.0;         // |y - y_anom|
    double mae_max_dev = 0.0; // worst deviation of |q-y|+|q-y_anom| from c_x
    double mse_spread = 0.0;  // max - min of the squared-loss sum over q
};

// Checks that the absolute-loss sum is constant for every probe point q
// strictly between y and y_anom while the squared-loss sum is not. Throws
// when the absolute-loss identity is violated beyond one rounding ulp of
// c_x.
IdentityAudit loss_identity_probe(double y, double y_anom, std::span<const double> q_samples);

// Monte-Carlo check of the affine risk identity for a fixed predictor under
// absolute loss. Predictions are clamped into the closed interval between
// the clean and the anomalous label, where the loss-sum constant holds.
// Requires a Constant or Missing spec and eta < 0.5.
LossAudit risk_affinity_probe(const Model& predictor, const SupervisedDataset& clean_data,
                              double eta, const AnomalySpec& anomaly, std::size_t n_samples);

// Empirical minimizer of q -> (1-eta) * loss(q, y) + eta * E loss(q, y+eps)
// with eps ~ N(0, sigma^2), found by a coarse grid plus golden-section
// refinement. Both losses should return q* near y.
double gaussian_optimum_probe(double y, double sigma, double eta, std::size_t n_samples,
                              LossId loss, std::uint64_t seed = 0);

} // namespace rtsf
