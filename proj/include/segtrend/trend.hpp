#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "segtrend/segmented.hpp"

namespace segtrend {

struct SegmentTrend {
    int start_day = 1;
    int end_day = 1;
    int length = 0;      // end_day - start_day, in days
    double slope = 0.0;  // log-scale slope b_i
    double dpc = 0.0;    // (e^b - 1) * 100
};

struct AdpcEstimate {
    double estimate = 0.0;  // percent
    double se = 0.0;
    std::pair<double, double> ci{0.0, 0.0};
};

struct TrendSummary {
    std::vector<SegmentTrend> segments;
    AdpcEstimate adpc;
    // Plain weighted arithmetic mean of the per-segment DPC values, kept as
    // a diagnostic next to the exponentiated weighted log-slope mean.
    double adpc_arithmetic = 0.0;
};

// dpc_t = ((y_{t+1} - y_t) / y_t) * 100 for t = 1..n-1. All y must be > 0.
std::vector<double> empirical_dpc(const std::vector<double>& y);

// (e^b - 1) * 100 for a slope b fitted on ln(y).
double model_dpc(double log_slope);

// Exponentiated segment-length-weighted mean of log-scale slopes with a
// delta-method standard error: se = 100 e^bbar sqrt(w' Cov w) / sum(w),
// ci = estimate +/- 1.96 se.
AdpcEstimate adpc(const std::vector<double>& slopes, const std::vector<double>& weights,
                  const Eigen::MatrixXd& slope_covariance);

// Slope covariance propagated from the coefficient covariance through the
// prefix-sum map L (slopes = L beta).
Eigen::MatrixXd slope_covariance(const SegmentedFit& fit);

// Segments delimited at rounded breakpoints; weights are whole-day segment
// lengths partitioning [1, n]. The fit must have been computed on
// ln-transformed values.
TrendSummary trend_summary(const SegmentedFit& fit);

}  // namespace segtrend
