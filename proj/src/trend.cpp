#include "rtsf/trend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtsf {

void TrendConfig::validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("trend lambda must be > 0");
    if (!(abs_tol > 0.0 && rel_tol > 0.0)) throw std::invalid_argument("trend tolerances must be > 0");
    if (!(rho > 0.0)) throw std::invalid_argument("trend rho must be > 0");
    if (max_iter < 1) throw std::invalid_argument("trend max_iter must be >= 1");
}

namespace {

double soft(double x, double thr) {
    if (x > thr) return x - thr;
    if (x < -thr) return x + thr;
    return 0.0;
}

// y = D x with D the (T-2) x T second-difference operator.
void apply_d(std::span<const double> x, std::vector<double>& y) {
    const std::size_t m = x.size() - 2;
    y.resize(m);
    for (std::size_t j = 0; j < m; ++j) y[j] = x[j] - 2.0 * x[j + 1] + x[j + 2];
}

// y = D^T v.
void apply_dt(std::span<const double> v, std::vector<double>& y, std::size_t t) {
    y.assign(t, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
        y[j] += v[j];
        y[j + 1] -= 2.0 * v[j];
        y[j + 2] += v[j];
    }
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Cholesky factorization of a symmetric positive definite pentadiagonal
// matrix given by its main diagonal and the first two subdiagonals.
struct BandedCholesky {
    std::vector<double> l0, l1, l2;

    void factor(const std::vector<double>& d0, const std::vector<double>& d1,
                const std::vector<double>& d2) {
        const std::size_t n = d0.size();
        l0.assign(n, 0.0);
        l1.assign(n > 1 ? n - 1 : 0, 0.0);
        l2.assign(n > 2 ? n - 2 : 0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double diag = d0[j];
            if (j >= 1) diag -= l1[j - 1] * l1[j - 1];
            if (j >= 2) diag -= l2[j - 2] * l2[j - 2];
            if (!(diag > 0.0)) throw std::runtime_error("banded Cholesky: matrix not SPD");
            l0[j] = std::sqrt(diag);
            if (j + 1 < n) {
                double off = d1[j];
                if (j >= 1) off -= l2[j - 1] * l1[j - 1];
                l1[j] = off / l0[j];
            }
            if (j + 2 < n) l2[j] = d2[j] / l0[j];
        }
    }

    void solve(const std::vector<double>& rhs, std::vector<double>& x) const {
        const std::size_t n = rhs.size();
        x.resize(n);
        // forward: L y = rhs
        for (std::size_t i = 0; i < n; ++i) {
            double v = rhs[i];
            if (i >= 1) v -= l1[i - 1] * x[i - 1];
            if (i >= 2) v -= l2[i - 2] * x[i - 2];
            x[i] = v / l0[i];
        }
        // backward: L^T x = y
        for (std::size_t ii = n; ii-- > 0;) {
            double v = x[ii];
            if (ii + 1 < n) v -= l1[ii] * x[ii + 1];
            if (ii + 2 < n) v -= l2[ii] * x[ii + 2];
            x[ii] = v / l0[ii];
        }
    }
};

// Bands of alpha*I + beta*D^T D for the length-t problem.
void dtd_bands(std::size_t t, double alpha, double beta, std::vector<double>& d0,
               std::vector<double>& d1, std::vector<double>& d2) {
    d0.assign(t, alpha);
    d1.assign(t - 1, 0.0);
    d2.assign(t - 2, 0.0);
    const double c[3] = {1.0, -2.0, 1.0};
    for (std::size_t j = 0; j + 2 < t; ++j) {
        for (int a = 0; a < 3; ++a) {
            d0[j + a] += beta * c[a] * c[a];
            if (a + 1 < 3) d1[j + a] += beta * c[a] * c[a + 1];
            if (a + 2 < 3) d2[j + a] += beta * c[a] * c[a + 2];
        }
    }
}

} // namespace

double trend_objective(std::span<const double> z, std::span<const double> s, double lambda,
                       Fidelity fidelity) {
    if (z.size() != s.size()) throw std::invalid_argument("trend_objective: length mismatch");
    double fid = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double r = z[i] - s[i];
        fid += fidelity == Fidelity::L1 ? std::abs(r) : r * r;
    }
    double pen = 0.0;
    for (std::size_t j = 0; j + 2 < s.size(); ++j)
        pen += std::abs(s[j] - 2.0 * s[j + 1] + s[j + 2]);
    return fid + lambda * pen;
}

TrendSolution fit_trend(const TimeSeries& z, const TrendConfig& cfg) {
    cfg.validate();
    const std::size_t t = z.values.size();
    if (t < 3) throw std::invalid_argument("fit_trend needs at least 3 points");
    for (double v : z.values)
        if (!std::isfinite(v)) throw std::invalid_argument("fit_trend: non-finite input");

    const std::size_t m = t - 2;
    const double rho = cfg.rho;
    const double lambda = cfg.lambda;
    const bool l1 = cfg.fidelity == Fidelity::L1;

    BandedCholesky chol;
    std::vector<double> d0, d1, d2;
    if (l1) {
        // s-update solves (I + D^T D) s = (z - u + a) + D^T (v - b)
        dtd_bands(t, 1.0, 1.0, d0, d1, d2);
    } else {
        // s-update solves (2 I + rho D^T D) s = 2 z + rho D^T (v - b)
        dtd_bands(t, 2.0, rho, d0, d1, d2);
    }
    chol.factor(d0, d1, d2);

    std::vector<double> s = z.values;
    std::vector<double> u(t, 0.0);       // fidelity split (L1 only)
    std::vector<double> a(t, 0.0);       // its scaled dual
    std::vector<double> v, b(m, 0.0), ds, rhs, dtv, scratch;
    apply_d(s, v); // start from v = D z so an already-feasible z converges at once

    TrendSolution best;
    best.trend = s;
    best.objective = trend_objective(z.values, s, lambda, cfg.fidelity);

    const double norm_z = norm2(z.values);
    std::vector<double> u_prev, v_prev;

    int it = 0;
    for (it = 1; it <= cfg.max_iter; ++it) {
        // s-update
        if (l1) {
            rhs.resize(t);
            for (std::size_t i = 0; i < t; ++i) rhs[i] = z.values[i] - u[i] + a[i];
            scratch.resize(m);
            for (std::size_t j = 0; j < m; ++j) scratch[j] = v[j] - b[j];
            apply_dt(scratch, dtv, t);
            for (std::size_t i = 0; i < t; ++i) rhs[i] += dtv[i];
        } else {
            scratch.resize(m);
            for (std::size_t j = 0; j < m; ++j) scratch[j] = v[j] - b[j];
            apply_dt(scratch, dtv, t);
            rhs.resize(t);
            for (std::size_t i = 0; i < t; ++i) rhs[i] = 2.0 * z.values[i] + rho * dtv[i];
        }
        chol.solve(rhs, s);
        apply_d(s, ds);

        u_prev = u;
        v_prev = v;

        // proximal updates
        if (l1)
            for (std::size_t i = 0; i < t; ++i) u[i] = soft(z.values[i] - s[i] + a[i], 1.0 / rho);
        for (std::size_t j = 0; j < m; ++j) v[j] = soft(ds[j] + b[j], lambda / rho);

        // dual updates
        double pri_sq = 0.0;
        if (l1) {
            for (std::size_t i = 0; i < t; ++i) {
                const double r = z.values[i] - s[i] - u[i];
                a[i] += r;
                pri_sq += r * r;
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            const double r = ds[j] - v[j];
            b[j] += r;
            pri_sq += r * r;
        }
        const double pri = std::sqrt(pri_sq);

        // dual residual: rho * (du - D^T dv) for L1, rho * D^T dv for L2
        for (std::size_t j = 0; j < m; ++j) scratch[j] = v[j] - v_prev[j];
        apply_dt(scratch, dtv, t);
        double dual_sq = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            const double d = l1 ? rho * ((u[i] - u_prev[i]) - dtv[i]) : rho * dtv[i];
            dual_sq += d * d;
        }
        const double dual = std::sqrt(dual_sq);

        const double obj = trend_objective(z.values, s, lambda, cfg.fidelity);
        if (obj < best.objective) {
            best.objective = obj;
            best.trend = s;
        }
        best.iterations = it;
        best.primal_residual = pri;
        best.dual_residual = dual;

        // stopping test (Boyd et al. scaled-dual form)
        double ax = norm2(s);
        double dsn = norm2(ds);
        double axn = l1 ? std::sqrt(ax * ax + dsn * dsn) : dsn;
        double bwn = l1 ? std::sqrt(norm2(u) * norm2(u) + norm2(v) * norm2(v)) : norm2(v);
        double cn = l1 ? norm_z : norm2(v); // L2 constraint rhs is 0; use |v| floor
        const double dim_pri = std::sqrt(static_cast<double>(l1 ? t + m : m));
        const double eps_pri = dim_pri * cfg.abs_tol + cfg.rel_tol * std::max({axn, bwn, cn});

        apply_dt(b, dtv, t);
        double aty_sq = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            const double y = l1 ? rho * (-a[i] + dtv[i]) : rho * dtv[i];
            aty_sq += y * y;
        }
        const double eps_dual =
            std::sqrt(static_cast<double>(t)) * cfg.abs_tol + cfg.rel_tol * std::sqrt(aty_sq);

        if (pri <= eps_pri && dual <= eps_dual) {
            best.converged = true;
            break;
        }
    }
    if (it > cfg.max_iter) best.iterations = cfg.max_iter;

    // Report the objective of the returned iterate, recomputed from it.
    best.objective = trend_objective(z.values, best.trend, lambda, cfg.fidelity);
    return best;
}

std::vector<WindowTriplet> trend_windows(const SupervisedDataset& dataset,
                                         const std::vector<double>& trend) {
    const std::size_t n = dataset.size();
    const std::size_t k = dataset.input_len;
    if (n == 0) throw std::invalid_argument("trend_windows: empty dataset");
    const std::size_t last_needed = (n - 1) * dataset.stride + k;
    if (trend.size() < last_needed)
        throw std::invalid_argument("trend_windows: trend shorter than dataset coverage");

    std::vector<WindowTriplet> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = dataset.input(i);
        const auto y = dataset.label(i);
        out[i].input.assign(x.begin(), x.end());
        out[i].label.assign(y.begin(), y.end());
        const std::size_t base = i * dataset.stride;
        out[i].trend.assign(trend.begin() + static_cast<std::ptrdiff_t>(base),
                            trend.begin() + static_cast<std::ptrdiff_t>(base + k));
    }
    return out;
}

} // namespace rtsf
