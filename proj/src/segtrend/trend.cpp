#include "segtrend/trend.hpp"

#include <cmath>
#include <stdexcept>

#include "segtrend/errors.hpp"

namespace segtrend {

std::vector<double> empirical_dpc(const std::vector<double>& y) {
    if (y.size() < 2) throw std::invalid_argument("empirical_dpc: need at least 2 observations");
    std::vector<double> out(y.size() - 1);
    for (std::size_t t = 0; t + 1 < y.size(); ++t) {
        if (y[t] <= 0.0)
            throw NonPositiveValue("non-positive value at position " + std::to_string(t + 1));
        out[t] = (y[t + 1] - y[t]) / y[t] * 100.0;
    }
    if (y.back() <= 0.0)
        throw NonPositiveValue("non-positive value at position " + std::to_string(y.size()));
    return out;
}

double model_dpc(double log_slope) { return (std::exp(log_slope) - 1.0) * 100.0; }

AdpcEstimate adpc(const std::vector<double>& slopes, const std::vector<double>& weights,
                  const Eigen::MatrixXd& slope_cov) {
    const auto k1 = slopes.size();
    if (weights.size() != k1 || slope_cov.rows() != static_cast<Eigen::Index>(k1) ||
        slope_cov.cols() != static_cast<Eigen::Index>(k1))
        throw std::invalid_argument("adpc: slopes, weights and covariance sizes must agree");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw InvalidWeights("segment weights must be positive");
        total += w;
    }
    double bbar = 0.0;
    for (std::size_t i = 0; i < k1; ++i) bbar += weights[i] * slopes[i];
    bbar /= total;

    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(k1));
    const double quad = w.dot(slope_cov * w);

    AdpcEstimate out;
    out.estimate = (std::exp(bbar) - 1.0) * 100.0;
    out.se = 100.0 * std::exp(bbar) * std::sqrt(std::max(quad, 0.0)) / total;
    out.ci = {out.estimate - 1.96 * out.se, out.estimate + 1.96 * out.se};
    return out;
}

Eigen::MatrixXd slope_covariance(const SegmentedFit& fit) {
    const int k = static_cast<int>(fit.breakpoints.size());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(k + 1, 2 + k);
    for (int j = 0; j <= k; ++j) {
        L(j, 1) = 1.0;
        for (int s = 0; s < j; ++s) L(j, 2 + s) = 1.0;
    }
    return L * fit.covariance * L.transpose();
}

TrendSummary trend_summary(const SegmentedFit& fit) {
    const int k = static_cast<int>(fit.breakpoints.size());
    std::vector<int> bounds;
    bounds.push_back(1);
    for (double tau : fit.breakpoints) bounds.push_back(static_cast<int>(std::round(tau)));
    bounds.push_back(fit.n);

    TrendSummary out;
    std::vector<double> weights(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        SegmentTrend seg;
        seg.start_day = bounds[static_cast<std::size_t>(j)];
        seg.end_day = bounds[static_cast<std::size_t>(j) + 1];
        seg.length = seg.end_day - seg.start_day;
        seg.slope = fit.slopes[static_cast<std::size_t>(j)];
        seg.dpc = model_dpc(seg.slope);
        weights[static_cast<std::size_t>(j)] = static_cast<double>(seg.length);
        out.segments.push_back(seg);
    }

    out.adpc = adpc(fit.slopes, weights, slope_covariance(fit));

    double total = 0.0, acc = 0.0;
    for (const auto& seg : out.segments) {
        total += seg.length;
        acc += seg.length * seg.dpc;
    }
    out.adpc_arithmetic = acc / total;
    return out;
}

}  // namespace segtrend
