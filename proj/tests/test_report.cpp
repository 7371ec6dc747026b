#include <sstream>

#include "doctest.h"
#include "segtrend/report.hpp"
#include "segtrend/simulate.hpp"
#include "segtrend/trend.hpp"

using namespace segtrend;

namespace {

FitReport sample_report(int k, bool log_scale) {
    SimulationSpec spec;
    spec.n = 120;
    spec.origin = CivilDate{2020, 3, 18};
    spec.intercept = log_scale ? 2.0 : 50.0;
    if (k == 0) {
        spec.slopes = {log_scale ? 0.02 : 3.0};
    } else {
        spec.slopes = {log_scale ? 0.05 : 4.0, log_scale ? -0.01 : -2.0};
        spec.breakpoints = {55.0};
    }
    spec.sigma = log_scale ? 0.01 : 1.5;
    auto sim = simulate(spec, 11);
    std::vector<double> init;
    if (k > 0) init.push_back(50.0);
    auto fit = fit_segmented(sim.series, init);
    std::optional<TrendSummary> trend;
    if (log_scale) trend = trend_summary(fit);
    FitReport report = build_report(fit, trend);
    report.country = "TUR";
    report.series = "active";
    report.log_scale = log_scale;
    report.input_hash = hash_hex("sample");
    report.config_echo["subcommand"] = "fit";
    return report;
}

}  // namespace

TEST_CASE("json round-trips byte for byte") {
    for (int k : {0, 1}) {
        for (bool log_scale : {false, true}) {
            const auto report = sample_report(k, log_scale);
            const std::string once = emit_report(report, OutputFormat::json);
            const auto parsed = report_from_json(nlohmann::ordered_json::parse(once));
            const std::string twice = emit_report(parsed, OutputFormat::json);
            CHECK(once == twice);
        }
    }
}

TEST_CASE("k = 0 reports an empty breakpoint list and one segment") {
    const auto report = sample_report(0, false);
    const auto j = report_to_json(report);
    CHECK(j.at("breakpoints").size() == 0);
    CHECK(j.at("segments").size() == 1);
    CHECK(j.at("adpc").is_null());
    CHECK(j.at("segments")[0].at("dpc").is_null());
}

TEST_CASE("log-scale reports carry DPC and ADPC") {
    const auto report = sample_report(1, true);
    const auto j = report_to_json(report);
    CHECK(!j.at("adpc").is_null());
    CHECK(!j.at("segments")[0].at("dpc").is_null());
}

TEST_CASE("text table has one row per segment") {
    SimulationSpec spec;
    spec.n = 253;
    spec.origin = CivilDate{2020, 3, 18};
    spec.intercept = -2122;
    spec.slopes = {2523, -2632, -359.2, 360.5, 2218};
    spec.breakpoints = {38, 55, 136, 244};
    spec.sigma = 0;
    auto sim = simulate(spec, 0);
    auto fit = fit_segmented(sim.series, {38, 55, 136, 244});
    auto report = build_report(fit, std::nullopt);
    const std::string text = emit_report(report, OutputFormat::text);

    int rows = 0;
    std::istringstream in(text);
    std::string line;
    bool in_table = false;
    while (std::getline(in, line)) {
        if (line.find("Parameter estimates") != std::string::npos) {
            in_table = true;
            continue;
        }
        if (in_table && line.size() > 2 && line[2] != ' ') ++rows;
    }
    CHECK(rows == 5);
    CHECK(text.find("2020-04-24") != std::string::npos);

    const std::string paper = emit_report(report, OutputFormat::text, DateStyle::paper);
    CHECK(paper.find("24.04.2020") != std::string::npos);
    CHECK(paper.find("16.11.2020") != std::string::npos);  // day 244 with origin 03-18
}

TEST_CASE("plot data") {
    const auto report = sample_report(1, false);
    SimulationSpec spec;
    spec.n = report.n;
    spec.origin = report.origin;
    spec.intercept = 50.0;
    spec.slopes = {4.0, -2.0};
    spec.breakpoints = {55.0};
    spec.sigma = 1.5;
    auto sim = simulate(spec, 11);

    const std::string csv = emit_plot_data(report, sim.series);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "day,date,observed,fitted,is_breakpoint,ci_low,ci_high");
    int rows = 0, break_rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line + ",") {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else
                cur.push_back(c);
        }
        REQUIRE(fields.size() == 7);
        if (fields[4] == "1") {
            const double day = std::stod(fields[0]);
            CHECK(std::stod(fields[5]) <= day);
            CHECK(std::stod(fields[6]) >= day);
            ++break_rows;
        } else {
            CHECK(fields[5].empty());
            CHECK(fields[6].empty());
        }
    }
    CHECK(rows == report.n);
    CHECK(break_rows == 1);
}

TEST_CASE("k = 0 plot data is an exact line") {
    SimulationSpec spec;
    spec.n = 30;
    spec.origin = CivilDate{2020, 1, 1};
    spec.intercept = 5.0;
    spec.slopes = {2.0};
    spec.sigma = 0.0;
    auto sim = simulate(spec, 3);
    auto fit = fit_segmented(sim.series, {});
    auto report = build_report(fit, std::nullopt);
    const std::string csv = emit_plot_data(report, sim.series);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    int t = 0;
    while (std::getline(in, line)) {
        ++t;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line + ",") {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else
                cur.push_back(c);
        }
        CHECK(std::stod(fields[3]) == doctest::Approx(5.0 + 2.0 * t).epsilon(1e-9));
        CHECK(fields[4] == "0");
    }
}

TEST_CASE("input hashes are stable") {
    CHECK(hash_hex("") == hash_hex(""));
    CHECK(hash_hex("abc") != hash_hex("abd"));
    CHECK(hash_hex("abc").size() == 16);
}
