#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "segtrend/date.hpp"

namespace segtrend {

// Cumulative confirmed/recovered/deaths counts on strictly ascending dates.
// Cumulative columns may decrease when the source publishes revisions; that
// is preserved and surfaced as a quality flag downstream.
struct CountryPanel {
    std::string country;
    std::vector<CivilDate> dates;
    std::vector<long long> confirmed;
    std::vector<long long> recovered;
    std::vector<long long> deaths;
    std::optional<long long> population;

    int size() const { return static_cast<int>(dates.size()); }

    friend bool operator==(const CountryPanel&, const CountryPanel&) = default;
};

enum class SeriesKind { active, daily_cases, daily_recovered, daily_deaths };

struct SeriesSelector {
    SeriesKind kind = SeriesKind::active;
    bool per_million = false;
    bool log_scale = false;
};

std::string series_kind_name(SeriesKind kind);

// Header `date,confirmed,recovered,deaths[,population]` in any column
// order; extra columns are ignored. ISO-8601 dates, integer counts,
// LF or CRLF line endings.
CountryPanel parse_csv(std::istream& in, const std::string& country = "");
CountryPanel parse_csv_string(const std::string& text, const std::string& country = "");

std::string serialize_csv(const CountryPanel& panel);

// With enabled, missing dates are inserted carrying the previous cumulative
// values forward; otherwise any gap raises GapError naming the first
// missing date.
CountryPanel fill_gaps(const CountryPanel& panel, bool enabled);

// d_t = c_{t+1} - c_t. Negative differences (source revisions) are kept.
std::vector<double> derive_daily(const std::vector<long long>& cumulative);

int count_negative_steps(const std::vector<long long>& cumulative);

// active_t = confirmed_t - deaths_t - recovered_t; negative values are
// possible under source anomalies and preserved.
std::vector<double> derive_active(const CountryPanel& panel);

std::vector<double> per_million(const std::vector<double>& values, long long population);

// First date with cumulative confirmed >= threshold; an explicit start date
// overrides the threshold scan.
CivilDate align_threshold(const CountryPanel& panel, long long threshold,
                          std::optional<CivilDate> explicit_start);

// Elementwise natural log; a value <= 0 raises NonPositiveValue naming the
// offending date (day 1 of the series is `origin`).
std::vector<double> log_transform(const std::vector<double>& values, const CivilDate& origin);

// Rows from `start` (inclusive) through the end of the panel.
CountryPanel window_from(const CountryPanel& panel, const CivilDate& start);

}  // namespace segtrend
