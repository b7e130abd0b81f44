#pragma once

#include "rtsf/series.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rtsf {

enum class ModelKind { LinearAR, MLP1 };
enum class Activation { Tanh, Relu };

struct ModelSpec {
    ModelKind kind = ModelKind::LinearAR;
    std::size_t input_len = 16; // K
    std::size_t horizon = 1;    // O
    std::size_t hidden = 16;    // H, MLP1 only
    Activation activation = Activation::Tanh;
    std::uint64_t init_seed = 0;

    void validate() const;
};

// K*O + O parameters for LinearAR; K*H + H + H*O + O for MLP1. Layout is
// [W (O x K), b] and [W1 (H x K), b1, W2 (O x H), b2] respectively,
// row-major, flat.
std::size_t param_count(const ModelSpec& spec);

struct Model {
    ModelSpec spec;
    std::vector<double> params;
};

// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) initialization drawn from the
// stream derived from init_seed, in parameter-layout order.
Model make_model(const ModelSpec& spec);

void predict_into(const Model& model, std::span<const double> x, std::span<double> out);
std::vector<double> predict(const Model& model, std::span<const double> x);

enum class LossId { MAE, MSE, NormalizedMAE };

// Training criterion. NormalizedMAE divides each sample's MAE by its own
// positive constant c_x (indexed by dataset position).
struct LossKind {
    LossId id = LossId::MAE;
    std::vector<double> c_x;
};

// Per-output-mean sample loss: MAE = mean_o |yhat - y|, MSE = mean_o (.)^2.
double sample_loss(LossId id, std::span<const double> yhat, std::span<const double> y);

// Mean loss over the batch plus the analytic gradient of every parameter.
// The MAE subgradient at zero residual is 0.
std::pair<double, std::vector<double>> loss_and_grad(const Model& model,
                                                     const SupervisedDataset& data,
                                                     std::span<const std::size_t> batch,
                                                     const LossKind& loss);

// Mean test MAE / MSE of the model over all windows of a dataset.
std::pair<double, double> evaluate(const Model& model, const SupervisedDataset& data);

std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

const char* to_string(ModelKind k);
const char* to_string(Activation a);
const char* to_string(LossId l);
ModelKind model_kind_from_string(const std::string& s);
Activation activation_from_string(const std::string& s);

} // namespace rtsf
