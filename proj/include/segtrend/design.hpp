#pragma once

#include <Eigen/Dense>
#include <vector>

#include "segtrend/time_series.hpp"

namespace segtrend {

// (x - tau)+, the hinge basis that encodes a slope change without a jump.
inline double hinge(double x, double tau) { return x > tau ? x - tau : 0.0; }

// Columns ordered [1, x, (x - tau_1)+, ..., (x - tau_k)+] evaluated at
// x = 1..n.
struct DesignMatrix {
    Eigen::MatrixXd X;
    std::vector<double> breakpoints;

    int rows() const { return static_cast<int>(X.rows()); }
    int cols() const { return static_cast<int>(X.cols()); }
};

// Throws InvalidBreakpoints for unsorted/duplicate/non-finite entries and
// BreakOutOfRange for entries outside the open interval (1, n).
void validate_breakpoints(const std::vector<double>& breakpoints, int n);

DesignMatrix build_design(const TimeSeries& ts, const std::vector<double>& breakpoints);

// beta0 + beta1*x + sum_s delta_s * hinge(x, tau_s). Piecewise linear and
// continuous in x.
double evaluate(const Eigen::VectorXd& coefficients, const std::vector<double>& breakpoints,
                double x);

// slope_j = beta1 + sum_{s<j} delta_s for segments j = 1..k+1.
std::vector<double> segment_slopes(const Eigen::VectorXd& coefficients);

}  // namespace segtrend
