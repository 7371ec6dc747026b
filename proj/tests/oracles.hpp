// Test-side reference implementations, kept independent of the library's
// fitting path: closed-form span regressions, exhaustive partition search,
// and a dense grid search for the single-break hinge model.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace oracles {

// RSS of a simple line fit to y[first-1..last-1] (1-based inclusive span),
// computed two-pass from centered sums.
inline double line_rss(const std::vector<double>& y, int first, int last) {
    const int m = last - first + 1;
    double mean_x = 0.0, mean_y = 0.0;
    for (int t = first; t <= last; ++t) {
        mean_x += t;
        mean_y += y[static_cast<std::size_t>(t - 1)];
    }
    mean_x /= m;
    mean_y /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int t = first; t <= last; ++t) {
        const double dx = t - mean_x;
        const double dy = y[static_cast<std::size_t>(t - 1)] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double b = sxy / sxx;
    return syy - b * sxy;
}

struct Partition {
    double rss = std::numeric_limits<double>::infinity();
    std::vector<int> breaks;
};

// Exhaustive minimum over all partitions of 1..n into m+1 spans of length
// >= h; ascending enumeration with strict improvement keeps the earliest
// vector on ties.
inline Partition brute_force_partition(const std::vector<double>& y, int m, int h) {
    const int n = static_cast<int>(y.size());
    Partition best;
    std::vector<int> breaks(static_cast<std::size_t>(m));

    auto recurse = [&](auto&& self, int level, int prev_end, double acc) -> void {
        if (level == m) {
            if (n - prev_end < h) return;
            const double total = acc + line_rss(y, prev_end + 1, n);
            if (total < best.rss) {
                best.rss = total;
                best.breaks = breaks;
            }
            return;
        }
        for (int b = prev_end + h; b <= n - (m - level) * h; ++b) {
            breaks[static_cast<std::size_t>(level)] = b;
            self(self, level + 1, b, acc + line_rss(y, prev_end + 1, b));
        }
    };
    recurse(recurse, 0, 0, 0.0);
    return best;
}

// RSS of the continuous single-break hinge model [1, x, (x - tau)+] via
// 3x3 normal equations with partial pivoting.
inline double hinge_rss_direct(const std::vector<double>& y, double tau) {
    const int n = static_cast<int>(y.size());
    double a[3][3] = {};
    double rhs[3] = {};
    for (int t = 1; t <= n; ++t) {
        const double row[3] = {1.0, static_cast<double>(t), t > tau ? t - tau : 0.0};
        for (int i = 0; i < 3; ++i) {
            rhs[i] += row[i] * y[static_cast<std::size_t>(t - 1)];
            for (int j = 0; j < 3; ++j) a[i][j] += row[i] * row[j];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        for (int j = 0; j < 3; ++j) std::swap(a[col][j], a[pivot][j]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int j = col; j < 3; ++j) a[r][j] -= f * a[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    double beta[3];
    for (int i = 2; i >= 0; --i) {
        double v = rhs[i];
        for (int j = i + 1; j < 3; ++j) v -= a[i][j] * beta[j];
        beta[i] = v / a[i][i];
    }
    double rss = 0.0;
    for (int t = 1; t <= n; ++t) {
        const double fitted =
            beta[0] + beta[1] * t + beta[2] * (t > tau ? t - tau : 0.0);
        const double r = y[static_cast<std::size_t>(t - 1)] - fitted;
        rss += r * r;
    }
    return rss;
}

struct GridMin {
    double tau = 0.0;
    double rss = std::numeric_limits<double>::infinity();
};

// Dense 0.01-day grid over [h, n-h], then a ternary refinement inside the
// winning cell so the oracle minimum is resolved well below 1e-6 relative.
inline GridMin grid_search_tau(const std::vector<double>& y, int h, double step = 0.01) {
    const int n = static_cast<int>(y.size());
    GridMin best;
    for (double tau = h; tau <= n - h + 1e-12; tau += step) {
        const double rss = hinge_rss_direct(y, tau);
        if (rss < best.rss) {
            best.rss = rss;
            best.tau = tau;
        }
    }
    double lo = best.tau - step, hi = best.tau + step;
    for (int it = 0; it < 80; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (hinge_rss_direct(y, m1) < hinge_rss_direct(y, m2))
            hi = m2;
        else
            lo = m1;
    }
    const double tau = 0.5 * (lo + hi);
    const double rss = hinge_rss_direct(y, tau);
    if (rss < best.rss) {
        best.rss = rss;
        best.tau = tau;
    }
    return best;
}

}  // namespace oracles
