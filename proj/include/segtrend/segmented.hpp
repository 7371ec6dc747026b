#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "segtrend/ols.hpp"
#include "segtrend/time_series.hpp"

namespace segtrend {

struct SegmentedOptions {
    double tol = 1e-8;     // relative stopping tolerance on the gap coefficients
    int max_iter = 50;
    int min_gap = 7;       // smallest admissible distance between breaks and from the ends
    double confidence = 0.95;
};

struct SegmentedFit {
    Eigen::VectorXd coefficients;  // beta0, beta1, delta_1..delta_k
    std::vector<double> breakpoints;
    std::vector<double> breakpoint_se;
    std::vector<std::pair<double, double>> breakpoint_ci;
    Eigen::MatrixXd covariance;  // of the hinge-model coefficients
    double rss = 0.0;
    int iterations = 0;
    bool converged = true;
    std::vector<double> slopes;  // per-segment, length k+1
    CivilDate origin;
    int n = 0;
    double confidence = 0.95;
};

// Iterative linearization: refit with hinge columns U_s = (x - tau_s)+ and
// gap columns V_s = -1(x > tau_s), update tau_s += gamma_s/delta_s, stop
// once every |gamma_s| <= tol*(1 + |delta_s|). The returned model is a
// plain hinge OLS at the refined breakpoints. On non-convergence the
// best-RSS iterate is returned with converged = false.
SegmentedFit fit_segmented(const TimeSeries& ts, const std::vector<double>& init,
                           const SegmentedOptions& opts = {});

// Delta-method standard errors from an augmented (U,V) fit evaluated at the
// refined breakpoints: se_s = SE(gamma_s)/|delta_s|.
std::vector<double> breakpoint_se(const OlsFit& augmented, int k);

// date_s = origin + (round(tau_s) - 1) days, rounding half away from zero.
std::vector<CivilDate> breakpoint_dates(const SegmentedFit& fit);

}  // namespace segtrend
