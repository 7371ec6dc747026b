#pragma once

#include <cstdint>
#include <vector>

#include "segtrend/time_series.hpp"

namespace segtrend {

struct SimulationSpec {
    int n = 0;
    double intercept = 0.0;
    std::vector<double> slopes;       // per-segment, length k+1
    std::vector<double> breakpoints;  // length k, strictly increasing in (1, n)
    double sigma = 0.0;
    CivilDate origin{2020, 1, 1};
};

struct Simulation {
    TimeSeries series;
    SimulationSpec truth;
    std::uint64_t seed = 0;
};

// y_t = intercept + piecewise-linear mean at t + N(0, sigma^2) noise from a
// seeded deterministic generator.
Simulation simulate(const SimulationSpec& spec, std::uint64_t seed);

}  // namespace segtrend
