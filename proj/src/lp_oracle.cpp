#include "rtsf/trend.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rtsf {

namespace {

// Dense primal simplex on min c^T x, E x = h, x >= 0, started from a known
// basic feasible solution. Dantzig pricing with a Bland fallback after a
// stall so degenerate pivots cannot cycle.
class Simplex {
public:
    Simplex(std::vector<std::vector<double>> e, std::vector<double> h, std::vector<double> c,
            std::vector<std::size_t> basis)
        : tab_(std::move(e)), rhs_(std::move(h)), cost_(std::move(c)), basis_(std::move(basis)) {}

    // Returns the optimal objective; basic solution left in solution().
    double solve() {
        const std::size_t rows = tab_.size();
        const std::size_t cols = cost_.size();
        // reduced costs for the starting basis (identity columns, cost given)
        std::vector<double> red(cost_);
        for (std::size_t i = 0; i < rows; ++i) {
            const double cb = cost_[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) red[j] -= cb * tab_[i][j];
        }

        constexpr double eps = 1e-9;
        long iter = 0;
        const long bland_after = 2000;
        const long hard_cap = 500000;
        while (true) {
            if (++iter > hard_cap) throw std::runtime_error("simplex: iteration cap exceeded");

            std::size_t enter = cols;
            if (iter <= bland_after) {
                double bestv = -eps;
                for (std::size_t j = 0; j < cols; ++j)
                    if (red[j] < bestv) {
                        bestv = red[j];
                        enter = j;
                    }
            } else {
                for (std::size_t j = 0; j < cols; ++j)
                    if (red[j] < -eps) {
                        enter = j;
                        break;
                    }
            }
            if (enter == cols) break; // optimal

            std::size_t leave = rows;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows; ++i) {
                const double a = tab_[i][enter];
                if (a > eps) {
                    const double ratio = rhs_[i] / a;
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 &&
                         (leave == rows || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == rows) throw std::runtime_error("simplex: unbounded problem");

            pivot(leave, enter, red);
        }

        double obj = 0.0;
        for (std::size_t i = 0; i < rows; ++i) obj += cost_[basis_[i]] * rhs_[i];
        return obj;
    }

    std::vector<double> solution(std::size_t cols) const {
        std::vector<double> x(cols, 0.0);
        for (std::size_t i = 0; i < basis_.size(); ++i) x[basis_[i]] = rhs_[i];
        return x;
    }

private:
    void pivot(std::size_t prow, std::size_t pcol, std::vector<double>& red) {
        const std::size_t rows = tab_.size();
        const std::size_t cols = cost_.size();
        const double p = tab_[prow][pcol];
        for (std::size_t j = 0; j < cols; ++j) tab_[prow][j] /= p;
        rhs_[prow] /= p;
        tab_[prow][pcol] = 1.0; // kill roundoff in the pivot column
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == prow) continue;
            const double f = tab_[i][pcol];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) tab_[i][j] -= f * tab_[prow][j];
            tab_[i][pcol] = 0.0;
            rhs_[i] -= f * rhs_[prow];
            if (rhs_[i] < 0.0 && rhs_[i] > -1e-11) rhs_[i] = 0.0;
        }
        const double rf = red[pcol];
        if (rf != 0.0) {
            for (std::size_t j = 0; j < cols; ++j) red[j] -= rf * tab_[prow][j];
            red[pcol] = 0.0;
        }
        basis_[prow] = pcol;
    }

    std::vector<std::vector<double>> tab_;
    std::vector<double> rhs_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
};

} // namespace

std::pair<std::vector<double>, double> lp_oracle(const TimeSeries& z, double lambda) {
    const std::size_t t = z.values.size();
    if (t < 3) throw std::invalid_argument("lp_oracle needs at least 3 points");
    if (t > 64) throw std::invalid_argument("lp_oracle is capped at 64 points");
    if (!(lambda > 0.0)) throw std::invalid_argument("lp_oracle lambda must be > 0");

    // Columns: s+ (t) | s- (t) | p (t) | q (t) | r (m) | w (m), all >= 0,
    // where s = s+ - s-, p - q = z - s, r - w = D s.
    const std::size_t m = t - 2;
    const std::size_t cols = 4 * t + 2 * m;
    const std::size_t rows = t + m;
    const auto sp = [](std::size_t i) { return i; };
    const auto sm = [t](std::size_t i) { return t + i; };
    const auto pp = [t](std::size_t i) { return 2 * t + i; };
    const auto qq = [t](std::size_t i) { return 3 * t + i; };
    const auto rr = [t](std::size_t j) { return 4 * t + j; };
    const auto ww = [t, m](std::size_t j) { return 4 * t + m + j; };

    std::vector<std::vector<double>> e(rows, std::vector<double>(cols, 0.0));
    std::vector<double> h(rows, 0.0), c(cols, 0.0);
    std::vector<std::size_t> basis(rows);

    for (std::size_t i = 0; i < t; ++i) {
        c[pp(i)] = 1.0;
        c[qq(i)] = 1.0;
    }
    for (std::size_t j = 0; j < m; ++j) {
        c[rr(j)] = lambda;
        c[ww(j)] = lambda;
    }

    // fidelity rows: s + p - q = z, sign-normalized so the basic variable
    // (p or q) has coefficient +1 and the rhs is nonnegative
    for (std::size_t i = 0; i < t; ++i) {
        const double sign = z.values[i] >= 0.0 ? 1.0 : -1.0;
        e[i][sp(i)] = sign;
        e[i][sm(i)] = -sign;
        e[i][pp(i)] = sign;
        e[i][qq(i)] = -sign;
        h[i] = sign * z.values[i];
        basis[i] = sign > 0.0 ? pp(i) : qq(i);
    }
    // penalty rows: D s - r + w = 0, basic variable w_j
    const double d[3] = {1.0, -2.0, 1.0};
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t row = t + j;
        for (int a = 0; a < 3; ++a) {
            e[row][sp(j + static_cast<std::size_t>(a))] += d[a];
            e[row][sm(j + static_cast<std::size_t>(a))] -= d[a];
        }
        e[row][rr(j)] = -1.0;
        e[row][ww(j)] = 1.0;
        basis[row] = ww(j);
    }

    Simplex simplex(std::move(e), std::move(h), std::move(c), std::move(basis));
    const double obj = simplex.solve();
    const auto x = simplex.solution(cols);

    std::vector<double> s(t);
    for (std::size_t i = 0; i < t; ++i) s[i] = x[sp(i)] - x[sm(i)];
    return {std::move(s), obj};
}

} // namespace rtsf
