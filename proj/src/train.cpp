#include "rtsf/train.hpp"

#include "rtsf/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rtsf {

void TrainConfig::validate() const {
    if (epochs == 0) throw std::invalid_argument("train epochs must be >= 1");
    if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
    for (const auto& r : lr_schedule) {
        if (!(r.lr > 0.0)) throw std::invalid_argument("learning rates must be > 0");
        if (r.first < 1 || r.last < r.first)
            throw std::invalid_argument("bad lr schedule range");
    }
}

std::vector<LrRange> default_lr_schedule(std::size_t epochs) {
    const int e = static_cast<int>(epochs);
    if (e <= 10) return {{1, e, 0.01}};
    return {{1, 10, 0.01}, {11, e, 0.001}};
}

double lr_for_epoch(const std::vector<LrRange>& schedule, int epoch) {
    for (const auto& r : schedule)
        if (epoch >= r.first && epoch <= r.last) return r.lr;
    throw std::invalid_argument("no learning rate covers epoch " + std::to_string(epoch));
}

std::vector<EpochRecord> train(Model& model, const SupervisedDataset& trainset,
                               const LossKind& loss, const TrainConfig& cfg,
                               const SupervisedDataset& testset) {
    cfg.validate();
    if (!cfg.selection_mask.empty() && cfg.selection_mask.size() != trainset.size())
        throw std::invalid_argument("selection mask length mismatch");

    std::vector<std::size_t> indices;
    if (cfg.selection_mask.empty()) {
        indices.resize(trainset.size());
        std::iota(indices.begin(), indices.end(), std::size_t{0});
    } else {
        for (std::size_t i = 0; i < cfg.selection_mask.size(); ++i)
            if (cfg.selection_mask[i]) indices.push_back(i);
    }
    if (indices.empty()) throw std::runtime_error("train: every sample is masked out");

    const auto schedule = cfg.lr_schedule.empty() ? default_lr_schedule(cfg.epochs) : cfg.lr_schedule;
    const std::size_t np = model.params.size();

    std::vector<double> adam_m(np, 0.0), adam_v(np, 0.0);
    long long adam_t = 0;

    std::vector<EpochRecord> history;
    history.reserve(cfg.epochs);
    for (int epoch = 1; epoch <= static_cast<int>(cfg.epochs); ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        const double lr = lr_for_epoch(schedule, epoch);

        auto g = rng::make_epoch_stream(cfg.shuffle_seed, static_cast<std::uint64_t>(epoch));
        std::shuffle(indices.begin(), indices.end(), g);

        double loss_sum = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < indices.size(); start += cfg.batch_size) {
            const std::size_t count = std::min(cfg.batch_size, indices.size() - start);
            std::span<const std::size_t> batch(indices.data() + start, count);
            auto [batch_loss, grad] = loss_and_grad(model, trainset, batch, loss);
            loss_sum += batch_loss * static_cast<double>(count);
            seen += count;

            if (cfg.optimizer == Optimizer::SGD) {
                for (std::size_t i = 0; i < np; ++i) model.params[i] -= lr * grad[i];
            } else {
                ++adam_t;
                const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam_t));
                const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam_t));
                for (std::size_t i = 0; i < np; ++i) {
                    adam_m[i] = cfg.beta1 * adam_m[i] + (1.0 - cfg.beta1) * grad[i];
                    adam_v[i] = cfg.beta2 * adam_v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
                    const double mhat = adam_m[i] / bc1;
                    const double vhat = adam_v[i] / bc2;
                    model.params[i] -= lr * mhat / (std::sqrt(vhat) + cfg.adam_eps);
                }
            }
        }

        auto [test_mae, test_mse] = evaluate(model, testset);
        const auto t1 = std::chrono::steady_clock::now();
        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(seen);
        rec.test_mae = test_mae;
        rec.test_mse = test_mse;
        rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        history.push_back(rec);
    }
    return history;
}

} // namespace rtsf
