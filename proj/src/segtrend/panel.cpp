#include "segtrend/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "segtrend/errors.hpp"

namespace segtrend {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_count(const std::string& s, long long& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

std::string series_kind_name(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::active: return "active";
        case SeriesKind::daily_cases: return "daily-cases";
        case SeriesKind::daily_recovered: return "daily-recovered";
        case SeriesKind::daily_deaths: return "daily-deaths";
    }
    return "?";
}

CountryPanel parse_csv(std::istream& in, const std::string& country) {
    CountryPanel panel;
    panel.country = country;

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty input: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::map<std::string, int> columns;
    const auto header = split_fields(line);
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        if (columns.count(header[static_cast<std::size_t>(i)]))
            throw SchemaError("duplicate column '" + header[static_cast<std::size_t>(i)] + "'");
        columns[header[static_cast<std::size_t>(i)]] = i;
    }
    for (const char* required : {"date", "confirmed", "recovered", "deaths"})
        if (!columns.count(required))
            throw SchemaError(std::string("missing required column '") + required + "'");
    const int date_col = columns.at("date");
    const int conf_col = columns.at("confirmed");
    const int rec_col = columns.at("recovered");
    const int dea_col = columns.at("deaths");
    const int pop_col = columns.count("population") ? columns.at("population") : -1;

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);

        const auto date = CivilDate::parse_iso(fields[static_cast<std::size_t>(date_col)]);
        if (!date)
            throw ParseError("bad ISO-8601 date '" + fields[static_cast<std::size_t>(date_col)] + "'",
                             lineno);
        if (!panel.dates.empty() && !(panel.dates.back() < *date))
            throw DateOrderError("line " + std::to_string(lineno) + ": date " + date->iso() +
                                 " does not follow " + panel.dates.back().iso());

        long long conf = 0, rec = 0, dea = 0;
        if (!parse_count(fields[static_cast<std::size_t>(conf_col)], conf) || conf < 0)
            throw ParseError("bad confirmed count '" + fields[static_cast<std::size_t>(conf_col)] + "'",
                             lineno);
        if (!parse_count(fields[static_cast<std::size_t>(rec_col)], rec) || rec < 0)
            throw ParseError("bad recovered count '" + fields[static_cast<std::size_t>(rec_col)] + "'",
                             lineno);
        if (!parse_count(fields[static_cast<std::size_t>(dea_col)], dea) || dea < 0)
            throw ParseError("bad deaths count '" + fields[static_cast<std::size_t>(dea_col)] + "'",
                             lineno);
        if (pop_col >= 0 && !panel.population) {
            const auto& field = fields[static_cast<std::size_t>(pop_col)];
            if (!field.empty()) {
                long long pop = 0;
                if (!parse_count(field, pop) || pop <= 0)
                    throw ParseError("bad population '" + field + "'", lineno);
                panel.population = pop;
            }
        }

        panel.dates.push_back(*date);
        panel.confirmed.push_back(conf);
        panel.recovered.push_back(rec);
        panel.deaths.push_back(dea);
    }
    return panel;
}

CountryPanel parse_csv_string(const std::string& text, const std::string& country) {
    std::istringstream in(text);
    return parse_csv(in, country);
}

std::string serialize_csv(const CountryPanel& panel) {
    std::string out = panel.population ? "date,confirmed,recovered,deaths,population\n"
                                       : "date,confirmed,recovered,deaths\n";
    for (int i = 0; i < panel.size(); ++i) {
        out += panel.dates[static_cast<std::size_t>(i)].iso();
        out += ',' + std::to_string(panel.confirmed[static_cast<std::size_t>(i)]);
        out += ',' + std::to_string(panel.recovered[static_cast<std::size_t>(i)]);
        out += ',' + std::to_string(panel.deaths[static_cast<std::size_t>(i)]);
        if (panel.population) out += ',' + std::to_string(*panel.population);
        out += '\n';
    }
    return out;
}

CountryPanel fill_gaps(const CountryPanel& panel, bool enabled) {
    CountryPanel out;
    out.country = panel.country;
    out.population = panel.population;
    for (int i = 0; i < panel.size(); ++i) {
        if (i > 0) {
            CivilDate expected = out.dates.back().plus_days(1);
            while (expected < panel.dates[static_cast<std::size_t>(i)]) {
                if (!enabled)
                    throw GapError("missing date " + expected.iso() + " (use gap filling to carry forward)");
                out.dates.push_back(expected);
                out.confirmed.push_back(out.confirmed.back());
                out.recovered.push_back(out.recovered.back());
                out.deaths.push_back(out.deaths.back());
                expected = expected.plus_days(1);
            }
        }
        out.dates.push_back(panel.dates[static_cast<std::size_t>(i)]);
        out.confirmed.push_back(panel.confirmed[static_cast<std::size_t>(i)]);
        out.recovered.push_back(panel.recovered[static_cast<std::size_t>(i)]);
        out.deaths.push_back(panel.deaths[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<double> derive_daily(const std::vector<long long>& cumulative) {
    if (cumulative.size() < 2)
        throw std::invalid_argument("derive_daily: need at least 2 observations");
    std::vector<double> out(cumulative.size() - 1);
    for (std::size_t t = 0; t + 1 < cumulative.size(); ++t)
        out[t] = static_cast<double>(cumulative[t + 1] - cumulative[t]);
    return out;
}

int count_negative_steps(const std::vector<long long>& cumulative) {
    int count = 0;
    for (std::size_t t = 0; t + 1 < cumulative.size(); ++t)
        if (cumulative[t + 1] < cumulative[t]) ++count;
    return count;
}

std::vector<double> derive_active(const CountryPanel& panel) {
    std::vector<double> out(static_cast<std::size_t>(panel.size()));
    for (int i = 0; i < panel.size(); ++i)
        out[static_cast<std::size_t>(i)] =
            static_cast<double>(panel.confirmed[static_cast<std::size_t>(i)] -
                                panel.deaths[static_cast<std::size_t>(i)] -
                                panel.recovered[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<double> per_million(const std::vector<double>& values, long long population) {
    if (population <= 0) throw std::invalid_argument("per_million: population must be positive");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = values[i] * 1e6 / static_cast<double>(population);
    return out;
}

CivilDate align_threshold(const CountryPanel& panel, long long threshold,
                          std::optional<CivilDate> explicit_start) {
    if (panel.size() == 0) throw ThresholdNotReached("panel is empty");
    if (explicit_start) {
        const auto it = std::find(panel.dates.begin(), panel.dates.end(), *explicit_start);
        if (it == panel.dates.end())
            throw DataError("start date " + explicit_start->iso() + " not present in the panel");
        return *explicit_start;
    }
    for (int i = 0; i < panel.size(); ++i)
        if (panel.confirmed[static_cast<std::size_t>(i)] >= threshold)
            return panel.dates[static_cast<std::size_t>(i)];
    throw ThresholdNotReached("cumulative confirmed never reached " + std::to_string(threshold));
}

std::vector<double> log_transform(const std::vector<double>& values, const CivilDate& origin) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0))
            throw NonPositiveValue("non-positive value " + std::to_string(values[i]) + " at " +
                                   origin.plus_days(static_cast<std::int64_t>(i)).iso());
        out[i] = std::log(values[i]);
    }
    return out;
}

CountryPanel window_from(const CountryPanel& panel, const CivilDate& start) {
    CountryPanel out;
    out.country = panel.country;
    out.population = panel.population;
    for (int i = 0; i < panel.size(); ++i) {
        if (panel.dates[static_cast<std::size_t>(i)] < start) continue;
        out.dates.push_back(panel.dates[static_cast<std::size_t>(i)]);
        out.confirmed.push_back(panel.confirmed[static_cast<std::size_t>(i)]);
        out.recovered.push_back(panel.recovered[static_cast<std::size_t>(i)]);
        out.deaths.push_back(panel.deaths[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace segtrend
