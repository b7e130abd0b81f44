#pragma once

#include "rtsf/anomaly.hpp"
#include "rtsf/baselines.hpp"
#include "rtsf/config.hpp"
#include "rtsf/scoring.hpp"
#include "rtsf/synth.hpp"
#include "rtsf/trend.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rtsf {

// Everything one experiment needs, resolved from a Config with the paper
// protocol's defaults (K = 16, 30 epochs, batch 128, lambda = tau = 0.3,
// Dirac cutoff K-1, lr 0.01 for 10 epochs then 0.001).
struct ExperimentSettings {
    std::string data_source = "synthetic"; // synthetic | csv
    std::string data_name = "sine";
    std::size_t data_length = 4000;
    std::uint64_t data_seed = 0;
    std::string data_path;
    std::string data_column = "0";
    double train_fraction = 0.7;

    WindowConfig window_cfg;
    AnomalySpec anomaly;
    std::vector<std::string> methods;
    std::vector<std::uint64_t> seeds;

    TrendConfig trend_cfg;
    double tau = 0.3;
    WeightKind weight_kind = WeightKind::Dirac;
    std::optional<std::size_t> k_prime; // default K-1

    ModelSpec model_spec;
    TrainConfig train_cfg;
    LossId train_loss = LossId::MAE; // baselines' criterion

    double dir_delta = 0.7;
    std::size_t dir_pretrain_epochs = 5;
    std::size_t loss_sel_pretrain_epochs = 3;
    std::optional<double> loss_sel_keep_fraction; // default 1 - anomaly rate

    static ExperimentSettings from_config(const Config& cfg);
};

struct TrendDiag {
    bool present = false;
    double objective = 0.0;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;
};

struct PhaseTimings {
    long long trend_ms = 0;
    long long select_ms = 0;
    long long train_ms = 0;
};

struct SeedRun {
    std::uint64_t seed = 0;
    std::vector<EpochRecord> history;
    int best_epoch = 0;
    double best_mae = 0.0, best_mse = 0.0;
    double last_mae = 0.0, last_mse = 0.0;
    double delta = 0.0;
    std::size_t selected_count = 0;
    std::size_t total_windows = 0;
    TrendDiag trend;
    PhaseTimings timings;
    Model final_model;
};

struct MethodReport {
    std::string method;
    std::map<std::string, std::string> config_echo;
    std::vector<SeedRun> runs;
    double best_mae_mean = 0.0, best_mae_std = 0.0;
    double last_mae_mean = 0.0, last_mae_std = 0.0;
    double delta_mean = 0.0, delta_std = 0.0;
};

const std::vector<std::string>& known_methods();

// One report per configured method, every configured seed inside.
std::vector<MethodReport> run_experiment(const Config& cfg);

// Ablation modes of the selection pipeline: "full" (selection + MAE),
// "loss_only" (MAE, no selection), "selection_only" (MSE + selection).
MethodReport run_ablation(const Config& cfg, const std::string& mode);

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

struct SweepPoint {
    std::vector<std::pair<std::string, std::string>> assignment;
    std::vector<MethodReport> reports;
};

// Cartesian product of the axes (last axis fastest), one run_experiment per
// point.
std::vector<SweepPoint> sweep_experiment(const Config& base, const std::vector<SweepAxis>& axes);

SweepAxis parse_axis(const std::string& text); // "key=v1,v2,..."
std::vector<SweepAxis> axes_from_config(const Config& cfg);

std::string report_to_json(const MethodReport& report);
std::string reports_to_json(const std::vector<MethodReport>& reports);
std::string epoch_records_csv(const std::vector<MethodReport>& reports);
std::string sweep_summary_csv(const std::vector<SweepAxis>& axes,
                              const std::vector<SweepPoint>& points);

// temp-file + rename
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace rtsf
