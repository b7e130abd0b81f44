#pragma once

#include "rtsf/train.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rtsf {

// Detection-imputation-retraining settings. delta is the residual threshold
// deciding which observations the pretrained model overwrites.
struct DirConfig {
    double delta = 0.7;
    std::size_t pretrain_epochs = 5;
    TrainConfig retrain_cfg;

    void validate() const;
};

struct LossSelConfig {
    std::size_t pretrain_epochs = 3;
    double keep_fraction = 0.7; // 1 - assumed anomaly ratio

    void validate() const;
};

using TrainResult = std::pair<Model, std::vector<EpochRecord>>;

// Plain training on every window; equivalent to train() with a full mask.
TrainResult vanilla_train(const SupervisedDataset& trainset, const LossKind& loss,
                          const ModelSpec& spec, const TrainConfig& cfg,
                          const SupervisedDataset& testset);

// Pretrain on the noisy windows, overwrite observations whose prediction
// residual exceeds delta in one pass over the series (predictions taken
// from the original noisy inputs), rebuild windows, retrain from fresh
// initialization. The returned history is the retrained model's.
TrainResult offline_dir(const TimeSeries& series_noisy, const DirConfig& cfg,
                        const WindowConfig& window_cfg, const LossKind& loss,
                        const ModelSpec& spec, const SupervisedDataset& testset);

// Small-loss sample selection: pretrain a throwaway model, record every
// sample's loss after each pretrain epoch, rank by (mean, std, index)
// ascending and keep the lowest keep_fraction * N, then retrain from
// scratch on the kept samples.
TrainResult loss_based_selection(const SupervisedDataset& trainset, const LossSelConfig& cfg,
                                 const TrainConfig& train_cfg, const LossKind& loss,
                                 const ModelSpec& spec, const SupervisedDataset& testset);

// Points where the series deviates from its trend by more than tau.
std::vector<std::uint8_t> detect_flags(const TimeSeries& series, const std::vector<double>& trend,
                                       double tau);

struct SimpleImputations {
    TimeSeries zero_imputed;
    TimeSeries interpolated;
    TimeSeries trend_only;
};

// The three naive repairs of flagged points: set to zero, linearly
// interpolate across flagged runs from the nearest unflagged neighbors
// (clamping at the ends), or train on the trend itself.
SimpleImputations simple_imputers(const TimeSeries& series_noisy, const std::vector<double>& trend,
                                  double tau);

} // namespace rtsf
