#include "rtsf/anomaly.hpp"

#include "rtsf/rng.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rtsf {

void AnomalySpec::validate() const {
    if (!(rate >= 0.0 && rate < 1.0))
        throw std::invalid_argument("anomaly rate must lie in [0, 1)");
    switch (kind) {
    case AnomalyKind::Gaussian:
        if (!(scale > 0.0)) throw std::invalid_argument("Gaussian anomaly needs sigma > 0");
        break;
    case AnomalyKind::StudentT:
        if (!(shape > 0.0)) throw std::invalid_argument("StudentT anomaly needs nu > 0");
        break;
    case AnomalyKind::GenPareto:
        if (!(shape > 0.0)) throw std::invalid_argument("GenPareto anomaly needs c > 0");
        break;
    case AnomalyKind::SubsequenceGaussian:
        if (!(scale > 0.0)) throw std::invalid_argument("SubsequenceGaussian needs sigma > 0");
        if (!(shape >= 0.0 && shape < 1.0))
            throw std::invalid_argument("SubsequenceGaussian needs phi in [0, 1)");
        break;
    case AnomalyKind::None:
    case AnomalyKind::Constant:
    case AnomalyKind::Missing:
        break;
    }
}

namespace {

bool is_point_kind(AnomalyKind k) {
    return k == AnomalyKind::Constant || k == AnomalyKind::Missing ||
           k == AnomalyKind::Gaussian || k == AnomalyKind::StudentT ||
           k == AnomalyKind::GenPareto;
}

// One anomalous observation replacing the clean value z.
double draw_anomalous(double z, const AnomalySpec& spec, std::mt19937_64& g) {
    switch (spec.kind) {
    case AnomalyKind::Constant:
        return z + spec.scale;
    case AnomalyKind::Missing:
        return spec.scale;
    case AnomalyKind::Gaussian: {
        std::normal_distribution<double> n(0.0, spec.scale);
        return z + n(g);
    }
    case AnomalyKind::StudentT: {
        std::student_t_distribution<double> t(spec.shape);
        return z + t(g);
    }
    case AnomalyKind::GenPareto: {
        // Inverse CDF of the standard generalized Pareto with shape c,
        // unit scale: x = ((1-u)^(-c) - 1) / c.
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const double u = u01(g);
        const double c = spec.shape;
        return z + (std::pow(1.0 - u, -c) - 1.0) / c;
    }
    default:
        throw std::invalid_argument("not a point anomaly kind");
    }
}

} // namespace

std::pair<TimeSeries, AnomalyMask> inject_point(const TimeSeries& ts, const AnomalySpec& spec) {
    spec.validate();
    if (!is_point_kind(spec.kind) && spec.kind != AnomalyKind::None)
        throw std::invalid_argument("inject_point requires a point anomaly kind");
    if (spec.position != AnomalyPosition::Uniform)
        throw std::invalid_argument("inject_point handles uniform positions only");
    check_series(ts);

    TimeSeries out = ts;
    AnomalyMask mask(ts.values.size(), 0);
    if (spec.kind == AnomalyKind::None || spec.rate == 0.0) return {out, mask};

    auto g = rng::make_stream(spec.seed, rng::Stream::point_inject);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t t = 0; t < out.values.size(); ++t) {
        if (u01(g) < spec.rate) {
            out.values[t] = draw_anomalous(ts.values[t], spec, g);
            mask[t] = 1;
        }
    }
    return {out, mask};
}

std::pair<SupervisedDataset, std::vector<AnomalyMask>>
inject_positional(const SupervisedDataset& dataset, const AnomalySpec& spec) {
    spec.validate();
    if (!is_point_kind(spec.kind))
        throw std::invalid_argument("inject_positional requires a point anomaly kind");
    if (spec.position == AnomalyPosition::Uniform)
        throw std::invalid_argument("inject_positional requires position front/middle/back");
    const std::size_t k = dataset.input_len;
    if (k < 3) throw std::invalid_argument("positional injection needs input_len >= 3");
    if (dataset.stride < k)
        throw std::invalid_argument("positional injection requires non-overlapping windows");

    // Region bounds [lo, hi). Front and back take ceil(K/3) points each,
    // middle takes the remainder between them.
    const std::size_t third = (k + 2) / 3;
    std::size_t lo = 0, hi = 0;
    switch (spec.position) {
    case AnomalyPosition::Front:
        lo = 0;
        hi = third;
        break;
    case AnomalyPosition::Back:
        lo = k - third;
        hi = k;
        break;
    case AnomalyPosition::Middle:
        lo = third;
        hi = k - third;
        break;
    default:
        break;
    }
    if (hi <= lo) throw std::invalid_argument("positional region is empty for this input_len");

    // In-region rate chosen so the expected per-window count matches
    // uniform injection: eta * K anomalies spread over (hi - lo) slots.
    const double region_rate =
        std::min(1.0, spec.rate * static_cast<double>(k) / static_cast<double>(hi - lo));

    SupervisedDataset out = dataset;
    std::vector<AnomalyMask> masks(dataset.size(), AnomalyMask(k, 0));
    if (spec.rate == 0.0) return {out, masks};

    auto g = rng::make_stream(spec.seed, rng::Stream::positional_inject);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t n = 0; n < out.size(); ++n) {
        auto x = out.input(n);
        for (std::size_t j = lo; j < hi; ++j) {
            if (u01(g) < region_rate) {
                x[j] = draw_anomalous(dataset.input(n)[j], spec, g);
                masks[n][j] = 1;
            }
        }
    }
    return {out, masks};
}

SupervisedDataset inject_label(const SupervisedDataset& dataset, const AnomalySpec& spec) {
    spec.validate();
    if (!is_point_kind(spec.kind) && spec.kind != AnomalyKind::None)
        throw std::invalid_argument("inject_label requires a point anomaly kind");

    SupervisedDataset out = dataset;
    if (spec.kind == AnomalyKind::None || spec.rate == 0.0) return out;

    auto g = rng::make_stream(spec.seed, rng::Stream::label_inject);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t n = 0; n < out.size(); ++n) {
        auto y = out.label(n);
        for (std::size_t o = 0; o < y.size(); ++o)
            if (u01(g) < spec.rate) y[o] = draw_anomalous(dataset.label(n)[o], spec, g);
    }
    return out;
}

std::pair<TimeSeries, AnomalyMask> inject_subsequence(const TimeSeries& ts, const AnomalySpec& spec) {
    spec.validate();
    if (spec.kind != AnomalyKind::SubsequenceGaussian)
        throw std::invalid_argument("inject_subsequence requires kind SubsequenceGaussian");
    check_series(ts);

    TimeSeries out = ts;
    AnomalyMask mask(ts.values.size(), 0);
    if (spec.rate == 0.0 && spec.shape == 0.0) return {out, mask};

    auto g = rng::make_stream(spec.seed, rng::Stream::subsequence_inject);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> base(0.0, spec.scale);
    std::normal_distribution<double> run(0.0, std::sqrt(0.1)); // variance 0.1

    bool prev_anomalous = false;
    for (std::size_t t = 0; t < out.values.size(); ++t) {
        if (!prev_anomalous) {
            if (u01(g) < spec.rate) {
                out.values[t] = ts.values[t] + base(g);
                mask[t] = 1;
            }
        } else {
            if (u01(g) < spec.shape) {
                out.values[t] = out.values[t - 1] + run(g);
                mask[t] = 1;
            }
            // otherwise the clean value stands
        }
        prev_anomalous = mask[t] != 0;
    }
    return {out, mask};
}

const char* to_string(AnomalyKind k) {
    switch (k) {
    case AnomalyKind::None: return "none";
    case AnomalyKind::Constant: return "constant";
    case AnomalyKind::Missing: return "missing";
    case AnomalyKind::Gaussian: return "gaussian";
    case AnomalyKind::StudentT: return "student_t";
    case AnomalyKind::GenPareto: return "gen_pareto";
    case AnomalyKind::SubsequenceGaussian: return "subsequence_gaussian";
    }
    return "?";
}

const char* to_string(AnomalyPosition p) {
    switch (p) {
    case AnomalyPosition::Uniform: return "uniform";
    case AnomalyPosition::Front: return "front";
    case AnomalyPosition::Middle: return "middle";
    case AnomalyPosition::Back: return "back";
    }
    return "?";
}

AnomalyKind anomaly_kind_from_string(const std::string& s) {
    if (s == "none") return AnomalyKind::None;
    if (s == "constant") return AnomalyKind::Constant;
    if (s == "missing") return AnomalyKind::Missing;
    if (s == "gaussian") return AnomalyKind::Gaussian;
    if (s == "student_t") return AnomalyKind::StudentT;
    if (s == "gen_pareto") return AnomalyKind::GenPareto;
    if (s == "subsequence_gaussian") return AnomalyKind::SubsequenceGaussian;
    throw std::invalid_argument("unknown anomaly kind: " + s);
}

AnomalyPosition anomaly_position_from_string(const std::string& s) {
    if (s == "uniform") return AnomalyPosition::Uniform;
    if (s == "front") return AnomalyPosition::Front;
    if (s == "middle") return AnomalyPosition::Middle;
    if (s == "back") return AnomalyPosition::Back;
    throw std::invalid_argument("unknown anomaly position: " + s);
}

} // namespace rtsf
