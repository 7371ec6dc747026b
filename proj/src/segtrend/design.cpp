#include "segtrend/design.hpp"

#include <cmath>

#include "segtrend/errors.hpp"

namespace segtrend {

void validate_breakpoints(const std::vector<double>& breakpoints, int n) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double tau : breakpoints) {
        if (!std::isfinite(tau)) throw InvalidBreakpoints("non-finite breakpoint");
        if (tau <= prev)
            throw InvalidBreakpoints("breakpoints must be strictly increasing");
        if (tau <= 1.0 || tau >= static_cast<double>(n))
            throw BreakOutOfRange("breakpoint " + std::to_string(tau) +
                                  " outside open interval (1, " + std::to_string(n) + ")");
        prev = tau;
    }
}

DesignMatrix build_design(const TimeSeries& ts, const std::vector<double>& breakpoints) {
    const int n = ts.n();
    validate_breakpoints(breakpoints, n);
    const int k = static_cast<int>(breakpoints.size());
    Eigen::MatrixXd X(n, 2 + k);
    for (int t = 1; t <= n; ++t) {
        X(t - 1, 0) = 1.0;
        X(t - 1, 1) = static_cast<double>(t);
        for (int s = 0; s < k; ++s)
            X(t - 1, 2 + s) = hinge(static_cast<double>(t), breakpoints[static_cast<std::size_t>(s)]);
    }
    return DesignMatrix{std::move(X), breakpoints};
}

double evaluate(const Eigen::VectorXd& coefficients, const std::vector<double>& breakpoints,
                double x) {
    const int k = static_cast<int>(breakpoints.size());
    if (coefficients.size() != 2 + k)
        throw std::invalid_argument("coefficient/breakpoint size mismatch");
    double y = coefficients(0) + coefficients(1) * x;
    for (int s = 0; s < k; ++s) y += coefficients(2 + s) * hinge(x, breakpoints[static_cast<std::size_t>(s)]);
    return y;
}

std::vector<double> segment_slopes(const Eigen::VectorXd& coefficients) {
    if (coefficients.size() < 2)
        throw std::invalid_argument("need at least intercept and slope");
    const int k = static_cast<int>(coefficients.size()) - 2;
    std::vector<double> slopes(static_cast<std::size_t>(k) + 1);
    double acc = coefficients(1);
    slopes[0] = acc;
    for (int s = 0; s < k; ++s) {
        acc += coefficients(2 + s);
        slopes[static_cast<std::size_t>(s) + 1] = acc;
    }
    return slopes;
}

}  // namespace segtrend
