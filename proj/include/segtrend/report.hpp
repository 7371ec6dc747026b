#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "segtrend/segmented.hpp"
#include "segtrend/time_series.hpp"
#include "segtrend/trend.hpp"

namespace segtrend {

enum class OutputFormat { json, csv, text };
enum class DateStyle { iso, paper };

struct QualityFlags {
    int confirmed_revisions = 0;
    int recovered_revisions = 0;
    int deaths_revisions = 0;
    int negative_active = 0;
};

struct BreakpointRow {
    double day = 0.0;
    CivilDate date;
    double se = 0.0;
    std::pair<double, double> ci{0.0, 0.0};
};

struct SegmentRow {
    int start_day = 1;
    int end_day = 1;
    double slope = 0.0;
    std::optional<double> dpc;  // only for log-scale fits
};

struct AdpcBlock {
    double estimate = 0.0;
    double se = 0.0;
    std::pair<double, double> ci{0.0, 0.0};
    double arithmetic = 0.0;
};

// Flattened, serializable view of a fit: JSON is the canonical form and
// round-trips losslessly; csv and text are lossy projections.
struct FitReport {
    std::string country;
    std::string series;
    bool per_million = false;
    bool log_scale = false;
    CivilDate origin;
    int n = 0;
    int k = 0;
    std::vector<double> coefficients;
    std::vector<double> slopes;
    std::vector<std::vector<double>> covariance;
    double rss = 0.0;
    int iterations = 0;
    bool converged = true;
    double confidence = 0.95;
    std::vector<BreakpointRow> breakpoints;
    std::vector<SegmentRow> segments;
    std::optional<AdpcBlock> adpc;
    QualityFlags quality;
    std::string input_hash;
    nlohmann::ordered_json config_echo = nlohmann::ordered_json::object();
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);

FitReport build_report(const SegmentedFit& fit, const std::optional<TrendSummary>& trend);

nlohmann::ordered_json report_to_json(const FitReport& report, DateStyle style = DateStyle::iso);
FitReport report_from_json(const nlohmann::ordered_json& j);

std::string emit_report(const FitReport& report, OutputFormat format,
                        DateStyle style = DateStyle::iso);

// Plot-ready CSV: day,date,observed,fitted,is_breakpoint,ci_low,ci_high;
// one row per observation, CI bounds only on breakpoint rows.
std::string emit_plot_data(const FitReport& report, const TimeSeries& observed,
                           DateStyle style = DateStyle::iso);

}  // namespace segtrend
