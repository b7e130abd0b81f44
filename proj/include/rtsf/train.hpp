#pragma once

#include "rtsf/model.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rtsf {

enum class Optimizer { Adam, SGD };

// (first_epoch, last_epoch, lr), 1-based inclusive ranges.
struct LrRange {
    int first = 1;
    int last = 1;
    double lr = 0.01;
};

struct TrainConfig {
    std::size_t epochs = 30;
    std::size_t batch_size = 128;
    std::vector<LrRange> lr_schedule; // empty = default_lr_schedule(epochs)
    Optimizer optimizer = Optimizer::Adam;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t shuffle_seed = 0;
    // When nonempty, only mask[i] != 0 samples take part in training.
    std::vector<std::uint8_t> selection_mask;

    void validate() const;
};

// 0.01 for the first 10 epochs, 0.001 afterwards.
std::vector<LrRange> default_lr_schedule(std::size_t epochs);

double lr_for_epoch(const std::vector<LrRange>& schedule, int epoch);

struct EpochRecord {
    int epoch = 0; // 1-based
    double train_loss = 0.0;
    double test_mae = 0.0;
    double test_mse = 0.0;
    long long wall_ms = 0;
};

// Mini-batch descent over the masked-in samples, recording clean-test MAE /
// MSE after every epoch. Deterministic given the seeds: batch order comes
// from a per-epoch stream of shuffle_seed.
std::vector<EpochRecord> train(Model& model, const SupervisedDataset& trainset,
                               const LossKind& loss, const TrainConfig& cfg,
                               const SupervisedDataset& testset);

} // namespace rtsf
