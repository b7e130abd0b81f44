#include "rtsf/baselines.hpp"

#include "rtsf/parallel.hpp"
#include "rtsf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rtsf {

namespace {

// Throwaway pretrain models draw their own seeds so the final training run
// consumes exactly the seeds the vanilla path would.
constexpr std::uint64_t kPretrainInitTag = 101;
constexpr std::uint64_t kPretrainShuffleTag = 102;

Model pretrain_model(const ModelSpec& spec) {
    ModelSpec s = spec;
    s.init_seed = rng::mix(spec.init_seed, kPretrainInitTag);
    return make_model(s);
}

TrainConfig pretrain_cfg(const TrainConfig& base, std::size_t epochs) {
    TrainConfig cfg = base;
    cfg.epochs = epochs;
    cfg.shuffle_seed = rng::mix(base.shuffle_seed, kPretrainShuffleTag);
    cfg.selection_mask.clear();
    return cfg;
}

} // namespace

void DirConfig::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("DIR delta must be > 0");
    if (pretrain_epochs == 0) throw std::invalid_argument("DIR pretrain_epochs must be >= 1");
}

void LossSelConfig::validate() const {
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw std::invalid_argument("keep_fraction must lie in (0, 1]");
    if (pretrain_epochs == 0) throw std::invalid_argument("pretrain_epochs must be >= 1");
}

TrainResult vanilla_train(const SupervisedDataset& trainset, const LossKind& loss,
                          const ModelSpec& spec, const TrainConfig& cfg,
                          const SupervisedDataset& testset) {
    Model model = make_model(spec);
    TrainConfig full = cfg;
    full.selection_mask.clear();
    auto history = train(model, trainset, loss, full, testset);
    return {std::move(model), std::move(history)};
}

TrainResult offline_dir(const TimeSeries& series_noisy, const DirConfig& cfg,
                        const WindowConfig& window_cfg, const LossKind& loss,
                        const ModelSpec& spec, const SupervisedDataset& testset) {
    cfg.validate();
    const auto noisy_windows = window(series_noisy, window_cfg);

    Model pre = pretrain_model(spec);
    const auto pcfg = pretrain_cfg(cfg.retrain_cfg, cfg.pretrain_epochs);
    train(pre, noisy_windows, loss, pcfg, testset);
    for (double p : pre.params)
        if (!std::isfinite(p)) throw std::runtime_error("offline_dir: pretraining diverged");

    // One imputation pass. Each prediction uses the original observed
    // values of the preceding input_len points; no cascading.
    TimeSeries imputed = series_noisy;
    const std::size_t k = window_cfg.input_len;
    if (std::isfinite(cfg.delta)) {
        std::vector<double> yhat(spec.horizon);
        for (std::size_t t = k; t < series_noisy.values.size(); ++t) {
            std::span<const double> x(series_noisy.values.data() + (t - k), k);
            predict_into(pre, x, yhat);
            if (std::abs(yhat[0] - series_noisy.values[t]) > cfg.delta)
                imputed.values[t] = yhat[0];
        }
    }

    const auto rebuilt = window(imputed, window_cfg);
    return vanilla_train(rebuilt, loss, spec, cfg.retrain_cfg, testset);
}

TrainResult loss_based_selection(const SupervisedDataset& trainset, const LossSelConfig& cfg,
                                 const TrainConfig& train_cfg, const LossKind& loss,
                                 const ModelSpec& spec, const SupervisedDataset& testset) {
    cfg.validate();
    const std::size_t n = trainset.size();
    const std::size_t keep =
        static_cast<std::size_t>(std::llround(cfg.keep_fraction * static_cast<double>(n)));
    if (keep < 1) throw std::invalid_argument("keep_fraction keeps no samples");

    // Pretrain, snapshotting every sample's loss after each epoch.
    Model pre = pretrain_model(spec);
    std::vector<std::vector<double>> recorded(cfg.pretrain_epochs, std::vector<double>(n));
    for (std::size_t e = 0; e < cfg.pretrain_epochs; ++e) {
        auto ecfg = pretrain_cfg(train_cfg, 1);
        ecfg.shuffle_seed = rng::mix(ecfg.shuffle_seed, e);
        ecfg.lr_schedule = {{1, 1, lr_for_epoch(train_cfg.lr_schedule.empty()
                                                    ? default_lr_schedule(train_cfg.epochs)
                                                    : train_cfg.lr_schedule,
                                                static_cast<int>(e) + 1)}};
        train(pre, trainset, loss, ecfg, testset);
        auto& row = recorded[e];
        par::parallel_for(n, [&](std::size_t i) {
            std::vector<double> yhat(spec.horizon);
            predict_into(pre, trainset.input(i), yhat);
            row[i] = sample_loss(loss.id == LossId::MSE ? LossId::MSE : LossId::MAE, yhat,
                                 trainset.label(i));
        });
    }

    // Rank by (mean, std, index) ascending; keep the front.
    std::vector<double> mean(n, 0.0), sd(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = 0; e < cfg.pretrain_epochs; ++e) mean[i] += recorded[e][i];
        mean[i] /= static_cast<double>(cfg.pretrain_epochs);
        for (std::size_t e = 0; e < cfg.pretrain_epochs; ++e) {
            const double d = recorded[e][i] - mean[i];
            sd[i] += d * d;
        }
        sd[i] = std::sqrt(sd[i] / static_cast<double>(cfg.pretrain_epochs));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (mean[a] != mean[b]) return mean[a] < mean[b];
        if (sd[a] != sd[b]) return sd[a] < sd[b];
        return a < b;
    });

    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i = 0; i < keep && i < n; ++i) mask[order[i]] = 1;

    Model model = make_model(spec);
    TrainConfig rcfg = train_cfg;
    rcfg.selection_mask = std::move(mask);
    auto history = train(model, trainset, loss, rcfg, testset);
    return {std::move(model), std::move(history)};
}

std::vector<std::uint8_t> detect_flags(const TimeSeries& series, const std::vector<double>& trend,
                                       double tau) {
    if (series.values.size() != trend.size())
        throw std::invalid_argument("detect_flags: trend not aligned to series");
    std::vector<std::uint8_t> flags(series.values.size(), 0);
    for (std::size_t t = 0; t < flags.size(); ++t)
        if (std::abs(series.values[t] - trend[t]) > tau) flags[t] = 1;
    return flags;
}

SimpleImputations simple_imputers(const TimeSeries& series_noisy, const std::vector<double>& trend,
                                  double tau) {
    const auto flags = detect_flags(series_noisy, trend, tau);
    const std::size_t t = flags.size();
    if (std::all_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f != 0; }))
        throw std::runtime_error("simple_imputers: every point flagged, interpolation impossible");

    SimpleImputations out{series_noisy, series_noisy, series_noisy};
    out.trend_only.values = trend;

    for (std::size_t i = 0; i < t; ++i)
        if (flags[i]) out.zero_imputed.values[i] = 0.0;

    // linear interpolation across flagged runs; ends clamp to the nearest
    // unflagged value
    std::size_t i = 0;
    while (i < t) {
        if (!flags[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < t && flags[j]) ++j; // run is [i, j)
        const bool has_left = i > 0;
        const bool has_right = j < t;
        const double left = has_left ? series_noisy.values[i - 1] : series_noisy.values[j];
        const double right = has_right ? series_noisy.values[j] : series_noisy.values[i - 1];
        const double span_len = static_cast<double>(j - i + 1);
        for (std::size_t p = i; p < j; ++p) {
            if (!has_left || !has_right) {
                out.interpolated.values[p] = has_left ? left : right;
            } else {
                const double frac = static_cast<double>(p - i + 1) / span_len;
                out.interpolated.values[p] = left + (right - left) * frac;
            }
        }
        i = j;
    }
    return out;
}

} // namespace rtsf
