#include "rtsf/model.hpp"

#include "rtsf/parallel.hpp"
#include "rtsf/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

namespace rtsf {

void ModelSpec::validate() const {
    if (input_len == 0 || horizon == 0) throw std::invalid_argument("model needs K, O >= 1");
    if (kind == ModelKind::MLP1 && hidden == 0)
        throw std::invalid_argument("MLP1 needs hidden >= 1");
}

std::size_t param_count(const ModelSpec& spec) {
    spec.validate();
    if (spec.kind == ModelKind::LinearAR) return spec.input_len * spec.horizon + spec.horizon;
    return spec.input_len * spec.hidden + spec.hidden + spec.hidden * spec.horizon + spec.horizon;
}

Model make_model(const ModelSpec& spec) {
    Model m{spec, std::vector<double>(param_count(spec), 0.0)};
    auto g = rng::make_stream(spec.init_seed, rng::Stream::model_init);
    const auto draw_layer = [&](std::size_t offset, std::size_t count, std::size_t fan_in) {
        const double a = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> u(-a, a);
        for (std::size_t i = 0; i < count; ++i) m.params[offset + i] = u(g);
    };
    const std::size_t k = spec.input_len, o = spec.horizon, h = spec.hidden;
    if (spec.kind == ModelKind::LinearAR) {
        draw_layer(0, k * o + o, k);
    } else {
        draw_layer(0, k * h + h, k);
        draw_layer(k * h + h, h * o + o, h);
    }
    return m;
}

namespace {

double activ(Activation a, double x) {
    return a == Activation::Tanh ? std::tanh(x) : (x > 0.0 ? x : 0.0);
}

double activ_deriv(Activation a, double pre, double post) {
    return a == Activation::Tanh ? 1.0 - post * post : (pre > 0.0 ? 1.0 : 0.0);
}

void check_input(const Model& model, std::span<const double> x) {
    if (x.size() != model.spec.input_len)
        throw std::invalid_argument("predict: input length mismatch");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("predict: non-finite input");
}

} // namespace

void predict_into(const Model& model, std::span<const double> x, std::span<double> out) {
    const auto& s = model.spec;
    const std::size_t k = s.input_len, o = s.horizon, h = s.hidden;
    const double* p = model.params.data();
    if (s.kind == ModelKind::LinearAR) {
        const double* w = p;
        const double* b = p + k * o;
        for (std::size_t i = 0; i < o; ++i) {
            double acc = b[i];
            for (std::size_t j = 0; j < k; ++j) acc += w[i * k + j] * x[j];
            out[i] = acc;
        }
        return;
    }
    const double* w1 = p;
    const double* b1 = p + k * h;
    const double* w2 = b1 + h;
    const double* b2 = w2 + h * o;
    std::vector<double> hid(h);
    for (std::size_t j = 0; j < h; ++j) {
        double acc = b1[j];
        for (std::size_t i = 0; i < k; ++i) acc += w1[j * k + i] * x[i];
        hid[j] = activ(s.activation, acc);
    }
    for (std::size_t i = 0; i < o; ++i) {
        double acc = b2[i];
        for (std::size_t j = 0; j < h; ++j) acc += w2[i * h + j] * hid[j];
        out[i] = acc;
    }
}

std::vector<double> predict(const Model& model, std::span<const double> x) {
    check_input(model, x);
    std::vector<double> out(model.spec.horizon);
    predict_into(model, x, out);
    return out;
}

double sample_loss(LossId id, std::span<const double> yhat, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = yhat[i] - y[i];
        acc += id == LossId::MSE ? d * d : std::abs(d);
    }
    return acc / static_cast<double>(y.size());
}

std::pair<double, std::vector<double>> loss_and_grad(const Model& model,
                                                     const SupervisedDataset& data,
                                                     std::span<const std::size_t> batch,
                                                     const LossKind& loss) {
    if (batch.empty()) throw std::invalid_argument("loss_and_grad: empty batch");
    if (loss.id == LossId::NormalizedMAE) {
        if (loss.c_x.size() != data.size())
            throw std::invalid_argument("NormalizedMAE requires one c_x per sample");
        for (std::size_t idx : batch)
            if (!(loss.c_x[idx] > 0.0)) throw std::invalid_argument("c_x must be > 0");
    }

    const auto& s = model.spec;
    const std::size_t k = s.input_len, o = s.horizon, h = s.hidden;
    const std::size_t np = model.params.size();
    const double inv_m = 1.0 / static_cast<double>(batch.size());
    const double inv_o = 1.0 / static_cast<double>(o);

    // accumulator slot np holds the loss; the rest is the gradient
    std::vector<double> acc(np + 1);
    par::blocked_accumulate(
        batch.size(), np + 1,
        [&](std::size_t bi, std::span<double> out) {
            const std::size_t idx = batch[bi];
            const auto x = data.input(idx);
            const auto y = data.label(idx);
            const double* p = model.params.data();

            double scale = inv_m * inv_o;
            if (loss.id == LossId::NormalizedMAE) scale /= loss.c_x[idx];

            std::vector<double> yhat(o);
            std::vector<double> hid, pre;
            if (s.kind == ModelKind::LinearAR) {
                const double* w = p;
                const double* b = p + k * o;
                for (std::size_t i = 0; i < o; ++i) {
                    double a = b[i];
                    for (std::size_t j = 0; j < k; ++j) a += w[i * k + j] * x[j];
                    yhat[i] = a;
                }
            } else {
                const double* w1 = p;
                const double* b1 = p + k * h;
                const double* w2 = b1 + h;
                const double* b2 = w2 + h * o;
                pre.resize(h);
                hid.resize(h);
                for (std::size_t j = 0; j < h; ++j) {
                    double a = b1[j];
                    for (std::size_t i = 0; i < k; ++i) a += w1[j * k + i] * x[i];
                    pre[j] = a;
                    hid[j] = activ(s.activation, a);
                }
                for (std::size_t i = 0; i < o; ++i) {
                    double a = b2[i];
                    for (std::size_t j = 0; j < h; ++j) a += w2[i * h + j] * hid[j];
                    yhat[i] = a;
                }
            }

            double lsum = 0.0;
            std::vector<double> dy(o);
            for (std::size_t i = 0; i < o; ++i) {
                const double d = yhat[i] - y[i];
                if (loss.id == LossId::MSE) {
                    lsum += d * d;
                    dy[i] = 2.0 * d * scale;
                } else {
                    lsum += std::abs(d);
                    dy[i] = (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0)) * scale;
                }
            }
            double lmean = lsum * inv_o;
            if (loss.id == LossId::NormalizedMAE) lmean /= loss.c_x[idx];
            out[np] += lmean * inv_m;

            if (s.kind == ModelKind::LinearAR) {
                for (std::size_t i = 0; i < o; ++i) {
                    for (std::size_t j = 0; j < k; ++j) out[i * k + j] += dy[i] * x[j];
                    out[k * o + i] += dy[i];
                }
            } else {
                const double* w2 = p + k * h + h;
                const std::size_t off_b1 = k * h;
                const std::size_t off_w2 = off_b1 + h;
                const std::size_t off_b2 = off_w2 + h * o;
                std::vector<double> dpre(h, 0.0);
                for (std::size_t i = 0; i < o; ++i) {
                    for (std::size_t j = 0; j < h; ++j) {
                        out[off_w2 + i * h + j] += dy[i] * hid[j];
                        dpre[j] += w2[i * h + j] * dy[i];
                    }
                    out[off_b2 + i] += dy[i];
                }
                for (std::size_t j = 0; j < h; ++j) {
                    const double g = dpre[j] * activ_deriv(s.activation, pre[j], hid[j]);
                    for (std::size_t i = 0; i < k; ++i) out[j * k + i] += g * x[i];
                    out[off_b1 + j] += g;
                }
            }
        },
        acc);

    std::vector<double> grad(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(np));
    return {acc[np], std::move(grad)};
}

std::pair<double, double> evaluate(const Model& model, const SupervisedDataset& data) {
    if (data.size() == 0) throw std::invalid_argument("evaluate: empty dataset");
    const std::size_t o = model.spec.horizon;
    std::vector<double> acc(2);
    par::blocked_accumulate(
        data.size(), 2,
        [&](std::size_t n, std::span<double> out) {
            std::vector<double> yhat(o);
            predict_into(model, data.input(n), yhat);
            const auto y = data.label(n);
            for (std::size_t i = 0; i < o; ++i) {
                const double d = yhat[i] - y[i];
                out[0] += std::abs(d);
                out[1] += d * d;
            }
        },
        acc);
    const double denom = static_cast<double>(data.size() * o);
    return {acc[0] / denom, acc[1] / denom};
}

std::string model_to_json(const Model& model) {
    nlohmann::json j;
    j["kind"] = to_string(model.spec.kind);
    j["input_len"] = model.spec.input_len;
    j["horizon"] = model.spec.horizon;
    j["hidden"] = model.spec.hidden;
    j["activation"] = to_string(model.spec.activation);
    j["params"] = model.params;
    return j.dump();
}

Model model_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Model m;
    m.spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
    m.spec.input_len = j.at("input_len").get<std::size_t>();
    m.spec.horizon = j.at("horizon").get<std::size_t>();
    m.spec.hidden = j.at("hidden").get<std::size_t>();
    m.spec.activation = activation_from_string(j.at("activation").get<std::string>());
    m.params = j.at("params").get<std::vector<double>>();
    if (m.params.size() != param_count(m.spec))
        throw std::invalid_argument("model_from_json: parameter count mismatch");
    return m;
}

const char* to_string(ModelKind k) { return k == ModelKind::LinearAR ? "linear_ar" : "mlp1"; }
const char* to_string(Activation a) { return a == Activation::Tanh ? "tanh" : "relu"; }
const char* to_string(LossId l) {
    switch (l) {
    case LossId::MAE: return "mae";
    case LossId::MSE: return "mse";
    case LossId::NormalizedMAE: return "normalized_mae";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "linear_ar") return ModelKind::LinearAR;
    if (s == "mlp1") return ModelKind::MLP1;
    throw std::invalid_argument("unknown model kind: " + s);
}

Activation activation_from_string(const std::string& s) {
    if (s == "tanh") return Activation::Tanh;
    if (s == "relu") return Activation::Relu;
    throw std::invalid_argument("unknown activation: " + s);
}

} // namespace rtsf
