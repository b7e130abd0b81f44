#include "rtsf/probes.hpp"

#include "rtsf/parallel.hpp"
#include "rtsf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rtsf {

IdentityAudit loss_identity_probe(double y, double y_anom, std::span<const double> q_samples) {
    if (y == y_anom) throw std::invalid_argument("loss_identity_probe: y equals y_anom");
    if (q_samples.empty()) throw std::invalid_argument("loss_identity_probe: no probe points");
    const double lo = std::min(y, y_anom);
    const double hi = std::max(y, y_anom);

    IdentityAudit audit;
    audit.c_x = hi - lo;
    const double ulp = std::nextafter(audit.c_x, audit.c_x * 2.0) - audit.c_x;

    double mse_min = std::numeric_limits<double>::infinity();
    double mse_max = -mse_min;
    for (double q : q_samples) {
        if (!(q > lo && q < hi))
            throw std::invalid_argument("loss_identity_probe: q not strictly between labels");
        const double mae_sum = std::abs(q - y) + std::abs(q - y_anom);
        audit.mae_max_dev = std::max(audit.mae_max_dev, std::abs(mae_sum - audit.c_x));
        const double mse_sum = (q - y) * (q - y) + (q - y_anom) * (q - y_anom);
        mse_min = std::min(mse_min, mse_sum);
        mse_max = std::max(mse_max, mse_sum);
    }
    audit.mse_spread = mse_max - mse_min;
    if (audit.mae_max_dev > ulp)
        throw std::runtime_error("absolute-loss sum is not constant between the labels");
    return audit;
}

LossAudit risk_affinity_probe(const Model& predictor, const SupervisedDataset& clean_data,
                              double eta, const AnomalySpec& anomaly, std::size_t n_samples) {
    if (!(eta >= 0.0 && eta < 0.5))
        throw std::invalid_argument("risk_affinity_probe requires eta in [0, 0.5)");
    if (anomaly.kind != AnomalyKind::Constant && anomaly.kind != AnomalyKind::Missing)
        throw std::invalid_argument("risk_affinity_probe supports Constant and Missing only");
    if (clean_data.size() == 0 || n_samples == 0)
        throw std::invalid_argument("risk_affinity_probe: empty input");
    if (predictor.spec.horizon != 1)
        throw std::invalid_argument("risk_affinity_probe expects horizon 1");

    // Predictions are deterministic per window; precompute them once.
    const std::size_t n_windows = clean_data.size();
    std::vector<double> preds(n_windows);
    par::parallel_for(n_windows, [&](std::size_t i) {
        double out;
        predict_into(predictor, clean_data.input(i), {&out, 1});
        preds[i] = out;
    });

    auto g = rng::make_stream(anomaly.seed, rng::Stream::probe_risk);
    std::uniform_int_distribution<std::size_t> pick(0, n_windows - 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double risk_clean = 0.0;   // sum |q - y|
    double risk_noisy = 0.0;   // sum |q - y_tilde|
    double c_sum = 0.0;        // sum |y - y_anom|
    double var_sum = 0.0;      // sum of per-sample Bernoulli variances
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::size_t j = pick(g);
        const double y = clean_data.label(j)[0];
        const double y_anom = anomaly.kind == AnomalyKind::Constant ? y + anomaly.scale
                                                                    : anomaly.scale;
        const double lo = std::min(y, y_anom);
        const double hi = std::max(y, y_anom);
        const double q = std::clamp(preds[j], lo, hi);
        const double a = std::abs(q - y);
        const double b = std::abs(q - y_anom);
        const double y_obs = u01(g) < eta ? y_anom : y;
        risk_clean += a;
        risk_noisy += std::abs(q - y_obs);
        c_sum += hi - lo;
        var_sum += eta * (1.0 - eta) * (a - b) * (a - b);
    }

    const double n = static_cast<double>(n_samples);
    LossAudit audit;
    audit.c_x_mean = c_sum / n;
    audit.gamma2 = eta * audit.c_x_mean;
    if (!(risk_clean > 0.0))
        throw std::runtime_error("risk_affinity_probe: clean risk is zero; use an inexact predictor");
    audit.gamma1 = (risk_noisy - eta * c_sum) / risk_clean;
    audit.gamma1_stderr = std::sqrt(var_sum) / risk_clean;
    return audit;
}

double gaussian_optimum_probe(double y, double sigma, double eta, std::size_t n_samples,
                              LossId loss, std::uint64_t seed) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_optimum_probe: sigma must be > 0");
    if (!(eta >= 0.0 && eta < 1.0))
        throw std::invalid_argument("gaussian_optimum_probe: eta must lie in [0, 1)");
    if (n_samples == 0) throw std::invalid_argument("gaussian_optimum_probe: no samples");
    if (loss == LossId::NormalizedMAE)
        throw std::invalid_argument("gaussian_optimum_probe supports MAE and MSE");

    std::vector<double> draws(n_samples);
    auto g = rng::make_stream(seed, rng::Stream::probe_gaussian);
    std::normal_distribution<double> nd(0.0, sigma);
    for (double& d : draws) d = y + nd(g);

    const auto objective = [&](double q) {
        const double tail = par::blocked_sum(n_samples, [&](std::size_t i) {
            const double d = q - draws[i];
            return loss == LossId::MSE ? d * d : std::abs(d);
        });
        const double head = loss == LossId::MSE ? (q - y) * (q - y) : std::abs(q - y);
        return (1.0 - eta) * head + eta * tail / static_cast<double>(n_samples);
    };

    // bracket the minimum on a coarse grid, then golden-section refine
    const double lo0 = y - 4.0 * sigma, hi0 = y + 4.0 * sigma;
    const int grid = 65;
    double best_q = y, best_f = objective(y);
    for (int i = 0; i < grid; ++i) {
        const double q = lo0 + (hi0 - lo0) * static_cast<double>(i) / (grid - 1);
        const double f = objective(q);
        if (f < best_f) {
            best_f = f;
            best_q = q;
        }
    }
    const double step = (hi0 - lo0) / (grid - 1);
    double a = best_q - step, b = best_q + step;

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > 1e-9 * sigma) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace rtsf
