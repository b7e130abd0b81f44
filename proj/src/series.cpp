#include "rtsf/series.hpp"

#include "rtsf/parallel.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtsf {

void check_series(const TimeSeries& ts) {
    if (ts.values.size() < 2)
        throw std::invalid_argument("time series must have length >= 2");
    for (double v : ts.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("time series contains a non-finite value");
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) {
        // from_chars rejects leading '+'; fall back to strtod for those.
        char* e = nullptr;
        out = std::strtod(t.c_str(), &e);
        return e == t.c_str() + t.size();
    }
    return true;
}

} // namespace

TimeSeries load_csv(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw std::runtime_error(path + ": empty file");

    // Resolve the column: an integer selector is a 0-based index, anything
    // else must match a header cell in the first row.
    std::size_t col = 0;
    bool by_index = false;
    {
        int idx = -1;
        auto [p, ec] = std::from_chars(column.data(), column.data() + column.size(), idx);
        by_index = ec == std::errc() && p == column.data() + column.size() && idx >= 0;
        if (by_index) col = static_cast<std::size_t>(idx);
    }

    std::size_t first_row = 0;
    const auto head = split_row(lines[0]);
    if (!by_index) {
        bool found = false;
        for (std::size_t c = 0; c < head.size(); ++c) {
            if (trim(head[c]) == column) {
                col = c;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error(path + ": no column named '" + column + "'");
        first_row = 1;
    } else {
        // Skip a header row if the selected cell of row 0 is non-numeric.
        double dummy;
        if (col < head.size() && !parse_double(head[col], dummy)) first_row = 1;
    }

    TimeSeries ts;
    ts.name = path;
    for (std::size_t r = first_row; r < lines.size(); ++r) {
        const auto cells = split_row(lines[r]);
        if (col >= cells.size())
            throw std::runtime_error(path + ": row " + std::to_string(r + 1) +
                                     " has no column " + std::to_string(col));
        double v;
        if (!parse_double(cells[col], v) || !std::isfinite(v))
            throw std::runtime_error(path + ": non-numeric cell at row " + std::to_string(r + 1) +
                                     ", column " + std::to_string(col) + ": '" + cells[col] + "'");
        ts.values.push_back(v);
    }
    if (ts.values.empty()) throw std::runtime_error(path + ": selected column is empty");
    return ts;
}

std::pair<TimeSeries, NormParams> normalize(const TimeSeries& ts) {
    check_series(ts);
    const auto& v = ts.values;
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= n; // population variance
    const double sd = std::sqrt(var);
    if (!(sd > 1e-12))
        throw std::invalid_argument("cannot normalize a constant series (std = 0)");
    NormParams p{mean, sd};
    return {apply_norm(ts, p), p};
}

TimeSeries apply_norm(const TimeSeries& ts, const NormParams& p) {
    if (!(p.std > 0.0)) throw std::invalid_argument("NormParams.std must be > 0");
    TimeSeries out = ts;
    for (double& x : out.values) x = (x - p.mean) / p.std;
    return out;
}

TimeSeries invert_norm(const TimeSeries& ts, const NormParams& p) {
    if (!(p.std > 0.0)) throw std::invalid_argument("NormParams.std must be > 0");
    TimeSeries out = ts;
    for (double& x : out.values) x = x * p.std + p.mean;
    return out;
}

std::pair<TimeSeries, TimeSeries> split(const TimeSeries& ts, double train_fraction) {
    check_series(ts);
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_fraction must lie in (0, 1)");
    const std::size_t t = ts.values.size();
    const std::size_t n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(t)));
    if (n_train == 0 || n_train == t)
        throw std::invalid_argument("split produces an empty part");
    TimeSeries train{{ts.values.begin(), ts.values.begin() + static_cast<std::ptrdiff_t>(n_train)},
                     ts.name, ts.freq};
    TimeSeries test{{ts.values.begin() + static_cast<std::ptrdiff_t>(n_train), ts.values.end()},
                    ts.name, ts.freq};
    return {std::move(train), std::move(test)};
}

SupervisedDataset window(const TimeSeries& ts, const WindowConfig& cfg,
                         std::vector<std::uint8_t> source_mask) {
    check_series(ts);
    if (cfg.input_len == 0 || cfg.horizon == 0 || cfg.stride == 0)
        throw std::invalid_argument("window config fields must be positive");
    const std::size_t t = ts.values.size();
    const std::size_t need = cfg.input_len + cfg.horizon;
    if (t < need)
        throw std::invalid_argument("series too short for a single window");
    if (!source_mask.empty() && source_mask.size() != t)
        throw std::invalid_argument("source mask length mismatch");

    const std::size_t n = (t - need) / cfg.stride + 1;
    SupervisedDataset ds;
    ds.input_len = cfg.input_len;
    ds.horizon = cfg.horizon;
    ds.stride = cfg.stride;
    ds.inputs.resize(n * cfg.input_len);
    ds.labels.resize(n * cfg.horizon);
    ds.source_mask = std::move(source_mask);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t base = i * cfg.stride;
        for (std::size_t k = 0; k < cfg.input_len; ++k)
            ds.inputs[i * cfg.input_len + k] = ts.values[base + k];
        for (std::size_t o = 0; o < cfg.horizon; ++o)
            ds.labels[i * cfg.horizon + o] = ts.values[base + cfg.input_len + o];
    }
    return ds;
}

double mae(std::span<const double> preds, std::span<const double> targets) {
    if (preds.size() != targets.size()) throw std::invalid_argument("mae: shape mismatch");
    if (preds.empty()) throw std::invalid_argument("mae: empty input");
    const double s = par::blocked_sum(preds.size(),
                                      [&](std::size_t i) { return std::abs(preds[i] - targets[i]); });
    return s / static_cast<double>(preds.size());
}

double mse(std::span<const double> preds, std::span<const double> targets) {
    if (preds.size() != targets.size()) throw std::invalid_argument("mse: shape mismatch");
    if (preds.empty()) throw std::invalid_argument("mse: empty input");
    const double s = par::blocked_sum(preds.size(), [&](std::size_t i) {
        const double d = preds[i] - targets[i];
        return d * d;
    });
    return s / static_cast<double>(preds.size());
}

} // namespace rtsf
