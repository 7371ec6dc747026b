#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "segtrend/date.hpp"

namespace segtrend {

// A dated, contiguous daily series. Day index t runs 1..n with day 1 at
// origin; date(t) = origin + (t - 1) days.
struct TimeSeries {
    CivilDate origin;
    std::vector<double> values;

    TimeSeries(CivilDate origin_, std::vector<double> values_)
        : origin(origin_), values(std::move(values_)) {
        if (values.size() < 3)
            throw std::invalid_argument("TimeSeries needs at least 3 observations");
    }

    int n() const { return static_cast<int>(values.size()); }
    double value(int t) const { return values[static_cast<std::size_t>(t - 1)]; }
    CivilDate date_at(int t) const { return origin.plus_days(t - 1); }
};

}  // namespace segtrend
