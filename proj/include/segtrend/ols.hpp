#pragma once

#include <Eigen/Dense>

namespace segtrend {

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::MatrixXd covariance;  // sigma^2 * (X'X)^-1, symmetric
    double rss = 0.0;
    int dof = 0;  // n - p
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
};

// Least squares via column-pivoted Householder QR. Rank deficiency is
// detected with a relative diagonal tolerance of 1e-10 on the triangular
// factor and reported as SingularDesign.
OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

}  // namespace segtrend
