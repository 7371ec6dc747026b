#include "segtrend/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "segtrend/errors.hpp"

namespace segtrend {

namespace {

std::vector<double> build_series(const CountryPanel& win, const PipelineOptions& opts,
                                 QualityFlags& quality) {
    std::vector<double> values;
    switch (opts.selector.kind) {
        case SeriesKind::active: values = derive_active(win); break;
        case SeriesKind::daily_cases: values = derive_daily(win.confirmed); break;
        case SeriesKind::daily_recovered: values = derive_daily(win.recovered); break;
        case SeriesKind::daily_deaths: values = derive_daily(win.deaths); break;
    }
    if (opts.selector.kind != SeriesKind::active && opts.clamp_negative)
        for (double& v : values) v = std::max(v, 0.0);

    quality.confirmed_revisions = count_negative_steps(win.confirmed);
    quality.recovered_revisions = count_negative_steps(win.recovered);
    quality.deaths_revisions = count_negative_steps(win.deaths);
    quality.negative_active = 0;
    for (double a : derive_active(win))
        if (a < 0.0) ++quality.negative_active;

    if (opts.selector.per_million) {
        if (!win.population)
            throw MissingPopulation("per-million output needs a population column for " +
                                    (win.country.empty() ? std::string("the input") : win.country));
        values = per_million(values, *win.population);
    }
    return values;
}

}  // namespace

PipelineResult run_fit_pipeline(const CountryPanel& panel, const PipelineOptions& opts) {
    const CountryPanel filled = fill_gaps(panel, opts.fill);
    const CivilDate start = align_threshold(filled, opts.threshold, opts.start_date);
    const CountryPanel win = window_from(filled, start);

    QualityFlags quality;
    std::vector<double> values = build_series(win, opts, quality);
    if (opts.selector.log_scale) values = log_transform(values, start);

    TimeSeries ts(start, std::move(values));
    const int n = ts.n();

    const int h_init = opts.min_segment.value_or(
        std::max(7, static_cast<int>(std::ceil(0.1 * static_cast<double>(n)))));
    const int h_fit = opts.min_segment.value_or(7);

    BreakInit init;
    if (opts.fixed_breaks) {
        init.chosen_m = *opts.fixed_breaks;
        init.min_segment = h_init;
        init.breakpoint_indices = dp_breaks(ts, *opts.fixed_breaks, h_init);
    } else {
        init = select_num_breaks(ts, opts.max_breaks, h_init);
    }

    SegmentedOptions seg_opts;
    seg_opts.min_gap = h_fit;
    seg_opts.confidence = opts.confidence;
    std::vector<double> init_taus(init.breakpoint_indices.begin(), init.breakpoint_indices.end());
    SegmentedFit fit = fit_segmented(ts, init_taus, seg_opts);

    std::optional<TrendSummary> trend;
    if (opts.selector.log_scale) trend = trend_summary(fit);

    return PipelineResult{std::move(fit),    std::move(trend), std::move(ts),
                          std::move(init),   quality,          start};
}

}  // namespace segtrend
