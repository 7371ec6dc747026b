#include "segtrend/break_init.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "segtrend/errors.hpp"

namespace segtrend {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// back[r][j] = minimal RSS of splitting [j..n] into r spans of length >= h.
// back[0][j] is finite (zero) only at j = n+1.
std::vector<std::vector<double>> backward_costs(const SegmentRssTable& table, int max_r, int h) {
    const int n = table.n();
    std::vector<std::vector<double>> back(
        static_cast<std::size_t>(max_r) + 1,
        std::vector<double>(static_cast<std::size_t>(n) + 2, kInf));
    back[0][static_cast<std::size_t>(n) + 1] = 0.0;
    for (int r = 1; r <= max_r; ++r) {
        for (int j = n + 1 - r * h; j >= 1; --j) {
            double best = kInf;
            for (int b = j + h - 1; b <= n; ++b) {
                const double rest = back[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(b) + 1];
                if (rest == kInf) continue;
                const double cand = table.rss(j, b) + rest;
                if (cand < best) best = cand;
            }
            back[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = best;
        }
    }
    return back;
}

// Walks the cost table front to back, taking at each step the earliest
// span end that achieves the optimal remaining cost. Sums are recomputed
// with the same operations as in backward_costs, so equality is exact.
std::vector<int> reconstruct(const SegmentRssTable& table,
                             const std::vector<std::vector<double>>& back, int m, int h) {
    const int n = table.n();
    std::vector<int> breaks;
    int pos = 1;
    for (int r = m + 1; r >= 2; --r) {
        const double target = back[static_cast<std::size_t>(r)][static_cast<std::size_t>(pos)];
        int chosen = -1;
        double best = kInf;
        for (int b = pos + h - 1; b <= n; ++b) {
            const double rest = back[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(b) + 1];
            if (rest == kInf) continue;
            const double cand = table.rss(pos, b) + rest;
            if (cand == target) {
                chosen = b;
                break;
            }
            if (cand < best) {
                best = cand;
                chosen = b;
            }
        }
        breaks.push_back(chosen);
        pos = chosen + 1;
    }
    return breaks;
}

}  // namespace

SegmentRssTable::SegmentRssTable(const TimeSeries& ts) : n_(ts.n()) {
    const std::size_t nn = static_cast<std::size_t>(n_);
    flat_.assign(nn * nn, std::numeric_limits<double>::quiet_NaN());
    for (int i = 1; i <= n_; ++i) {
        double mean_x = 0.0, mean_y = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
        int m = 0;
        for (int j = i; j <= n_; ++j) {
            const double x = static_cast<double>(j);
            const double y = ts.value(j);
            ++m;
            const double dx = x - mean_x;
            const double dy = y - mean_y;
            mean_x += dx / m;
            mean_y += dy / m;
            sxx += dx * (x - mean_x);
            sxy += dx * (y - mean_y);
            syy += dy * (y - mean_y);
            if (m >= 2) {
                const double r = syy - sxy * sxy / sxx;
                flat_[static_cast<std::size_t>(i - 1) * nn + static_cast<std::size_t>(j - 1)] =
                    r > 0.0 ? r : 0.0;
            }
        }
        if (i == 1) total_ss_ = syy;
    }
}

double SegmentRssTable::rss(int first, int last) const {
    if (first < 1 || last > n_ || last - first + 1 < 2)
        throw std::invalid_argument("SegmentRssTable::rss: span must hold >= 2 observations");
    return flat_[static_cast<std::size_t>(first - 1) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(last - 1)];
}

SegmentRssTable precompute_segment_rss(const TimeSeries& ts) { return SegmentRssTable(ts); }

std::vector<int> dp_breaks(const SegmentRssTable& table, int m, int h) {
    if (m < 0) throw std::invalid_argument("dp_breaks: m must be >= 0");
    if (h < 2) throw std::invalid_argument("dp_breaks: minimum segment must be >= 2");
    if (m == 0) return {};
    const int n = table.n();
    if (n < (m + 1) * h)
        throw TooManyBreaks("cannot place " + std::to_string(m) + " breaks with minimum segment " +
                            std::to_string(h) + " in " + std::to_string(n) + " observations");
    const auto back = backward_costs(table, m + 1, h);
    return reconstruct(table, back, m, h);
}

std::vector<int> dp_breaks(const TimeSeries& ts, int m, int h) {
    return dp_breaks(SegmentRssTable(ts), m, h);
}

BreakInit select_num_breaks(const TimeSeries& ts, int max_m, int h) {
    if (max_m < 0) throw std::invalid_argument("select_num_breaks: max_m must be >= 0");
    if (h < 2) throw std::invalid_argument("select_num_breaks: minimum segment must be >= 2");
    const SegmentRssTable table(ts);
    const int n = table.n();
    const double zero_tol = 1e-12 * std::max(table.total_ss(), 1e-300);

    const int feasible_max = std::min(max_m, n / h - 1);
    const auto back = backward_costs(table, std::max(feasible_max, 0) + 1, h);

    BreakInit out;
    out.min_segment = h;
    int best_m = -1;
    double best_bic = kInf;
    for (int m = 0; m <= max_m; ++m) {
        if (m > 0 && n < (m + 1) * h) continue;
        // The single full span of the no-break model is not subject to h.
        const double rss_m = m == 0 ? table.rss(1, n) : back[static_cast<std::size_t>(m) + 1][1];
        out.rss_by_m[m] = rss_m;
        double bic;
        if (rss_m <= zero_tol) {
            bic = -kInf;
        } else {
            const double p_m = 3.0 * (m + 1) + m;
            bic = n * std::log(rss_m / n) + p_m * std::log(static_cast<double>(n));
        }
        out.bic_by_m[m] = bic;
        if (bic < best_bic) {
            best_bic = bic;
            best_m = m;
        }
        if (bic == -kInf) break;  // smallest zero-residual m wins outright
    }
    out.chosen_m = best_m;
    out.breakpoint_indices = reconstruct(table, back, best_m, h);
    return out;
}

}  // namespace segtrend
