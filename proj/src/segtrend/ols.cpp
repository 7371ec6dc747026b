#include "segtrend/ols.hpp"

#include <stdexcept>

#include "segtrend/errors.hpp"

namespace segtrend {

OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    if (y.size() != n) throw std::invalid_argument("ols_fit: length of y must match rows of X");
    if (n <= p) throw std::invalid_argument("ols_fit: need more observations than parameters");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) throw SingularDesign("design matrix is rank deficient");

    OlsFit fit;
    fit.coefficients = qr.solve(y);
    fit.fitted = X * fit.coefficients;
    fit.residuals = y - fit.fitted;
    fit.rss = fit.residuals.squaredNorm();
    fit.dof = n - p;

    // (X'X)^-1 = P R^-1 R^-T P' with X P = Q R.
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd unscaled = Rinv * Rinv.transpose();
    unscaled = qr.colsPermutation() * unscaled * qr.colsPermutation().transpose();

    const double sigma2 = fit.rss / static_cast<double>(fit.dof);
    fit.covariance = 0.5 * sigma2 * (unscaled + unscaled.transpose());
    return fit;
}

}  // namespace segtrend
