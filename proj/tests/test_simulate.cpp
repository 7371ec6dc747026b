#include <cmath>

#include "doctest.h"
#include "segtrend/break_init.hpp"
#include "segtrend/design.hpp"
#include "segtrend/segmented.hpp"
#include "segtrend/simulate.hpp"

using namespace segtrend;

TEST_CASE("same seed reproduces the series bit for bit") {
    SimulationSpec spec;
    spec.n = 100;
    spec.intercept = 4.0;
    spec.slopes = {1.0, -0.5};
    spec.breakpoints = {40.0};
    spec.sigma = 2.0;
    auto a = simulate(spec, 99);
    auto b = simulate(spec, 99);
    CHECK(a.series.values == b.series.values);
    auto c = simulate(spec, 100);
    CHECK(a.series.values != c.series.values);
}

TEST_CASE("sigma zero emits the exact piecewise mean and refits cleanly") {
    SimulationSpec spec;
    spec.n = 80;
    spec.intercept = -3.0;
    spec.slopes = {2.0, 0.5, 3.0};
    spec.breakpoints = {25.5, 60.0};
    spec.sigma = 0.0;
    auto sim = simulate(spec, 1);

    Eigen::VectorXd coef(4);
    coef << -3.0, 2.0, -1.5, 2.5;
    for (int t = 1; t <= spec.n; ++t)
        CHECK(sim.series.value(t) == doctest::Approx(evaluate(coef, spec.breakpoints, t)).epsilon(1e-12));

    auto fit = fit_segmented(sim.series, {20.0, 55.0});
    REQUIRE(fit.breakpoints.size() == 2);
    CHECK(fit.breakpoints[0] == doctest::Approx(25.5).epsilon(1e-6));
    CHECK(fit.breakpoints[1] == doctest::Approx(60.0).epsilon(1e-6));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(fit.slopes[i] == doctest::Approx(spec.slopes[i]).epsilon(1e-6));
}

TEST_CASE("spec validation") {
    SimulationSpec spec;
    spec.n = 50;
    spec.slopes = {1.0, 2.0};
    spec.breakpoints = {};
    CHECK_THROWS_AS(simulate(spec, 0), std::invalid_argument);
    spec.breakpoints = {25.0};
    spec.sigma = -1.0;
    CHECK_THROWS_AS(simulate(spec, 0), std::invalid_argument);
}

TEST_CASE("no-break null model keeps model selection at zero breaks") {
    SimulationSpec spec;
    spec.n = 120;
    spec.intercept = 10.0;
    spec.slopes = {1.2};
    spec.sigma = 4.0;
    int chose_zero = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto sim = simulate(spec, seed);
        const auto init = select_num_breaks(sim.series, 3, 12);
        if (init.chosen_m == 0) ++chose_zero;
    }
    CHECK(chose_zero >= 95);
}
