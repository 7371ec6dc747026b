#include "segtrend/simulate.hpp"

#include <stdexcept>

#include "segtrend/design.hpp"
#include "segtrend/random.hpp"

namespace segtrend {

Simulation simulate(const SimulationSpec& spec, std::uint64_t seed) {
    if (spec.n < 3) throw std::invalid_argument("simulate: n must be >= 3");
    if (spec.slopes.size() != spec.breakpoints.size() + 1)
        throw std::invalid_argument("simulate: need one slope per segment (breaks + 1)");
    if (spec.sigma < 0.0) throw std::invalid_argument("simulate: sigma must be >= 0");
    validate_breakpoints(spec.breakpoints, spec.n);

    Eigen::VectorXd coef(2 + static_cast<Eigen::Index>(spec.breakpoints.size()));
    coef(0) = spec.intercept;
    coef(1) = spec.slopes[0];
    for (std::size_t s = 0; s + 1 < spec.slopes.size(); ++s)
        coef(2 + static_cast<Eigen::Index>(s)) = spec.slopes[s + 1] - spec.slopes[s];

    Rng rng(seed);
    std::vector<double> values(static_cast<std::size_t>(spec.n));
    for (int t = 1; t <= spec.n; ++t) {
        double y = evaluate(coef, spec.breakpoints, static_cast<double>(t));
        if (spec.sigma > 0.0) y += rng.normal(0.0, spec.sigma);
        values[static_cast<std::size_t>(t - 1)] = y;
    }
    return Simulation{TimeSeries(spec.origin, std::move(values)), spec, seed};
}

}  // namespace segtrend
