#include "segtrend/segmented.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

#include "segtrend/design.hpp"
#include "segtrend/errors.hpp"

namespace segtrend {

namespace {

constexpr double kDegenerateSlope = 1e-12;
constexpr int kMaxStepHalvings = 6;

Eigen::MatrixXd augmented_design(int n, const std::vector<double>& taus) {
    const int k = static_cast<int>(taus.size());
    Eigen::MatrixXd A(n, 2 + 2 * k);
    for (int t = 1; t <= n; ++t) {
        const double x = static_cast<double>(t);
        A(t - 1, 0) = 1.0;
        A(t - 1, 1) = x;
        for (int s = 0; s < k; ++s) {
            const double tau = taus[static_cast<std::size_t>(s)];
            A(t - 1, 2 + s) = hinge(x, tau);
            A(t - 1, 2 + k + s) = x > tau ? -1.0 : 0.0;
        }
    }
    return A;
}

bool ordered_with_gaps(const std::vector<double>& taus, double lo, double hi, double gap) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double tau : taus) {
        if (tau < lo || tau > hi) return false;
        if (tau - prev < gap && prev > 0) return false;
        prev = tau;
    }
    return true;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::vector<double> breakpoint_se(const OlsFit& augmented, int k) {
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) {
        const double delta = augmented.coefficients(2 + s);
        if (std::abs(delta) < kDegenerateSlope)
            throw DegenerateSlopeChange("slope change at breakpoint " + std::to_string(s + 1) +
                                        " is numerically zero; breakpoint not identifiable");
        const double var = augmented.covariance(2 + k + s, 2 + k + s);
        out[static_cast<std::size_t>(s)] = std::sqrt(std::max(var, 0.0)) / std::abs(delta);
    }
    return out;
}

SegmentedFit fit_segmented(const TimeSeries& ts, const std::vector<double>& init,
                           const SegmentedOptions& opts) {
    const int n = ts.n();
    const int k = static_cast<int>(init.size());
    const double h = static_cast<double>(opts.min_gap);
    if (opts.min_gap < 2) throw std::invalid_argument("fit_segmented: min_gap must be >= 2");
    if (n < (k + 1) * opts.min_gap)
        throw TooManyBreaks("series of length " + std::to_string(n) + " cannot hold " +
                            std::to_string(k) + " breaks with minimum gap " +
                            std::to_string(opts.min_gap));
    validate_breakpoints(init, n);
    if (!ordered_with_gaps(init, h, n - h, h))
        throw InvalidBreakpoints("initial breakpoints violate the minimum-gap constraint");

    const Eigen::VectorXd y = to_eigen(ts.values);

    SegmentedFit fit;
    fit.origin = ts.origin;
    fit.n = n;
    fit.confidence = opts.confidence;

    if (k == 0) {
        const OlsFit line = ols_fit(build_design(ts, {}).X, y);
        fit.coefficients = line.coefficients;
        fit.covariance = line.covariance;
        fit.rss = line.rss;
        fit.slopes = segment_slopes(line.coefficients);
        return fit;
    }

    std::vector<double> taus = init;
    std::vector<double> best_taus = init;
    double best_rss = std::numeric_limits<double>::infinity();
    std::vector<bool> clamped(static_cast<std::size_t>(k), false);
    bool converged = false;
    int iter = 0;

    OlsFit aug;
    while (iter < opts.max_iter) {
        ++iter;
        aug = ols_fit(augmented_design(n, taus), y);

        const OlsFit hinge_fit = ols_fit(build_design(ts, taus).X, y);
        if (hinge_fit.rss < best_rss) {
            best_rss = hinge_fit.rss;
            best_taus = taus;
        }

        for (int s = 0; s < k; ++s) {
            if (std::abs(aug.coefficients(2 + s)) < kDegenerateSlope)
                throw DegenerateSlopeChange("slope change at breakpoint " + std::to_string(s + 1) +
                                            " vanished during refinement");
        }

        bool done = true;
        for (int s = 0; s < k; ++s) {
            const double gamma = aug.coefficients(2 + k + s);
            const double delta = aug.coefficients(2 + s);
            if (std::abs(gamma) > opts.tol * (1.0 + std::abs(delta))) {
                done = false;
                break;
            }
        }
        if (done) {
            converged = true;
            break;
        }

        std::vector<double> step(static_cast<std::size_t>(k));
        for (int s = 0; s < k; ++s)
            step[static_cast<std::size_t>(s)] =
                aug.coefficients(2 + k + s) / aug.coefficients(2 + s);

        // Full Muggeo update first; halve the step when the proposal would
        // cross breakpoints or squeeze a gap below h.
        std::vector<double> proposal;
        std::vector<bool> clamp_hits;
        double lambda = 1.0;
        bool accepted = false;
        for (int half = 0; half <= kMaxStepHalvings; ++half, lambda *= 0.5) {
            proposal = taus;
            clamp_hits.assign(static_cast<std::size_t>(k), false);
            for (int s = 0; s < k; ++s) {
                double t = taus[static_cast<std::size_t>(s)] + lambda * step[static_cast<std::size_t>(s)];
                if (t < h || t > n - h) {
                    if (clamped[static_cast<std::size_t>(s)]) {
                        throw BreakEscaped("breakpoint " + std::to_string(s + 1) +
                                           " left the admissible range [" + std::to_string(opts.min_gap) +
                                           ", " + std::to_string(n - opts.min_gap) + "] twice");
                    }
                    clamp_hits[static_cast<std::size_t>(s)] = true;
                    t = t < h ? h : n - h;
                }
                proposal[static_cast<std::size_t>(s)] = t;
            }
            if (ordered_with_gaps(proposal, h, n - h, h)) {
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw BreaksCollided("refined breakpoints collided (inter-break gap fell below " +
                                 std::to_string(opts.min_gap) + " days)");
        for (int s = 0; s < k; ++s)
            if (clamp_hits[static_cast<std::size_t>(s)]) clamped[static_cast<std::size_t>(s)] = true;
        taus = proposal;
    }

    fit.iterations = iter;
    fit.converged = converged;
    if (!converged) taus = best_taus;

    const OlsFit final_fit = ols_fit(build_design(ts, taus).X, y);
    fit.coefficients = final_fit.coefficients;
    fit.covariance = final_fit.covariance;
    fit.rss = final_fit.rss;
    fit.breakpoints = taus;
    fit.slopes = segment_slopes(final_fit.coefficients);

    // SE from the augmented model at the refined breakpoints. When the loop
    // converged this is the fit that passed the stopping test; otherwise it
    // is refit at the best iterate.
    if (!converged) aug = ols_fit(augmented_design(n, taus), y);
    fit.breakpoint_se = breakpoint_se(aug, k);

    const boost::math::normal_distribution<double> norm;
    const double z = boost::math::quantile(norm, 0.5 * (1.0 + opts.confidence));
    fit.breakpoint_ci.resize(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) {
        const double tau = taus[static_cast<std::size_t>(s)];
        const double margin = z * fit.breakpoint_se[static_cast<std::size_t>(s)];
        fit.breakpoint_ci[static_cast<std::size_t>(s)] = {tau - margin, tau + margin};
    }
    return fit;
}

std::vector<CivilDate> breakpoint_dates(const SegmentedFit& fit) {
    std::vector<CivilDate> out;
    out.reserve(fit.breakpoints.size());
    for (double tau : fit.breakpoints) {
        const auto day = static_cast<std::int64_t>(std::round(tau));
        out.push_back(fit.origin.plus_days(day - 1));
    }
    return out;
}

}  // namespace segtrend
