#pragma once

#include <optional>

#include "segtrend/break_init.hpp"
#include "segtrend/panel.hpp"
#include "segtrend/report.hpp"
#include "segtrend/segmented.hpp"
#include "segtrend/trend.hpp"

namespace segtrend {

struct PipelineOptions {
    SeriesSelector selector;
    long long threshold = 100;
    std::optional<CivilDate> start_date;
    int max_breaks = 6;
    std::optional<int> fixed_breaks;   // overrides model selection
    std::optional<int> min_segment;    // overrides both stage defaults
    double confidence = 0.95;
    bool fill = false;
    bool clamp_negative = false;
};

struct PipelineResult {
    SegmentedFit fit;
    std::optional<TrendSummary> trend;
    TimeSeries observed;
    BreakInit init;
    QualityFlags quality;
    CivilDate start;
};

// panel -> gap check -> threshold alignment -> series derivation ->
// structural-change initialization -> segmented refinement -> trend.
//
// The initialization trim defaults to max(7, ceil(0.1 n)) while the
// refinement only enforces a 7-day floor, so refined breakpoints may end
// up closer together than the search grid allowed.
PipelineResult run_fit_pipeline(const CountryPanel& panel, const PipelineOptions& opts);

}  // namespace segtrend
