// segtrend - segmented (breakpoint) trend analysis for daily count series.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "segtrend/cli.hpp"

namespace {

using segtrend::CivilDate;
using segtrend::RunConfig;

std::optional<CivilDate> parse_date_flag(const std::string& value, const std::string& flag) {
    auto date = CivilDate::parse_iso(value);
    if (!date) throw CLI::ValidationError(flag, "expected an ISO-8601 date (YYYY-MM-DD)");
    return date;
}

void add_series_flags(CLI::App* cmd, RunConfig& config, std::string& series,
                      std::string& start_date) {
    cmd->add_option("--series", series, "Series to analyze")
        ->check(CLI::IsMember({"active", "daily-cases", "daily-recovered", "daily-deaths"}));
    cmd->add_flag("--per-million", config.selector.per_million, "Normalize per 1M population");
    cmd->add_flag("--log", config.selector.log_scale, "Fit on the natural log of the series");
    cmd->add_option("--threshold", config.threshold, "Cumulative-cases threshold for the start day");
    cmd->add_option("--start-date", start_date, "Explicit window start (overrides --threshold)");
    auto* max_breaks = cmd->add_option("--max-breaks", config.max_breaks,
                                       "Largest break count considered by model selection");
    auto* breaks = cmd->add_option_function<int>(
        "--breaks", [&config](int k) { config.fixed_breaks = k; },
        "Fixed break count (skips model selection)");
    breaks->excludes(max_breaks);
    max_breaks->excludes(breaks);
    cmd->add_option_function<int>(
        "--min-segment", [&config](int h) { config.min_segment = h; },
        "Minimum days between breakpoints (overrides stage defaults)");
    cmd->add_option("--confidence", config.confidence, "Breakpoint confidence level")
        ->check(CLI::Range(0.5, 0.9999));
    cmd->add_flag("--fill-gaps", config.fill_gaps, "Carry cumulative values across missing dates");
    cmd->add_flag("--clamp-negative", config.clamp_negative,
                  "Clamp negative daily differences to zero");
    cmd->add_flag("--strict", config.strict, "Treat non-convergence as an error (exit 2)");
}

void add_output_flags(CLI::App* cmd, RunConfig& config, std::string& format, std::string& style) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option_function<std::string>(
        "--output", [&config](const std::string& path) { config.output_path = path; },
        "Write the report to a file instead of stdout");
    cmd->add_option("--date-style", style, "Date rendering: iso (default) or paper (D.MM.YYYY)")
        ->check(CLI::IsMember({"iso", "paper"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segmented trend analysis for epidemic time series"};
    app.require_subcommand(1);

    RunConfig config;
    std::string series = "active";
    std::string start_date;
    std::string format = "json";
    std::string style = "iso";
    std::string input;
    std::string countries;
    std::string slopes;
    std::string breaks_at;
    std::string sim_origin = "2020-01-01";
    std::uint64_t seed = 0;

    auto* fit = app.add_subcommand("fit", "Fit a breakpoint regression to one input file");
    fit->add_option("--input", input, "Input CSV (date,confirmed,recovered,deaths[,population])")
        ->required();
    add_series_flags(fit, config, series, start_date);
    add_output_flags(fit, config, format, style);
    fit->add_option_function<std::string>(
        "--plot-data", [&config](const std::string& path) { config.plot_data_path = path; },
        "Write observed/fitted/CI rows for plotting to a CSV file");

    auto* compare = app.add_subcommand("compare", "Per-country trend summaries (ADPC table)");
    compare->add_option("--countries", countries, "Comma-separated ISO alpha-3 codes")->required();
    compare->add_option("--data-dir", config.data_dir, "Directory holding <CODE>.csv panels");
    add_series_flags(compare, config, series, start_date);
    add_output_flags(compare, config, format, style);

    auto* fetch = app.add_subcommand("fetch", "Download country panels into the local cache");
    fetch->add_option("--countries", countries, "Comma-separated ISO alpha-3 codes")->required();
    fetch->add_option_function<std::string>(
        "--cache-dir", [&config](const std::string& dir) { config.cache_dir = dir; },
        "Cache directory (default: SEGTREND_CACHE or ~/.cache/segtrend)");

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic series with known breaks");
    simulate->add_option("--n", config.sim.n, "Series length")->required();
    simulate->add_option("--intercept", config.sim.intercept, "Model intercept (level at day 0)");
    simulate->add_option("--slopes", slopes, "Comma-separated per-segment slopes")->required();
    simulate->add_option("--breaks-at", breaks_at, "Comma-separated breakpoint days");
    simulate->add_option("--sigma", config.sim.sigma, "Gaussian noise scale");
    simulate->add_option("--origin-date", sim_origin, "Calendar date of day 1");
    simulate->add_option("--seed", seed, "RNG seed")->required();
    add_output_flags(simulate, config, format, style);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) config.cmd = segtrend::Subcommand::fit;
        if (compare->parsed()) {
            config.cmd = segtrend::Subcommand::compare;
            // Table-4 style defaults: per-million log-scale active cases.
            if (!compare->count("--per-million")) config.selector.per_million = true;
            if (!compare->count("--log")) config.selector.log_scale = true;
        }
        if (fetch->parsed()) config.cmd = segtrend::Subcommand::fetch;
        if (simulate->parsed()) {
            config.cmd = segtrend::Subcommand::simulate;
            config.seed = seed;
        }

        if (!input.empty()) config.input = input;
        if (!countries.empty()) {
            std::string cur;
            for (char c : countries + ",") {
                if (c == ',') {
                    if (!cur.empty()) config.countries.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
        }
        if (!start_date.empty()) config.start_date = parse_date_flag(start_date, "--start-date");

        static const std::map<std::string, segtrend::SeriesKind> kinds{
            {"active", segtrend::SeriesKind::active},
            {"daily-cases", segtrend::SeriesKind::daily_cases},
            {"daily-recovered", segtrend::SeriesKind::daily_recovered},
            {"daily-deaths", segtrend::SeriesKind::daily_deaths}};
        config.selector.kind = kinds.at(series);
        config.format = format == "csv"    ? segtrend::OutputFormat::csv
                        : format == "text" ? segtrend::OutputFormat::text
                                           : segtrend::OutputFormat::json;
        config.date_style =
            style == "paper" ? segtrend::DateStyle::paper : segtrend::DateStyle::iso;

        auto parse_list = [](const std::string& text) {
            std::vector<double> out;
            std::string cur;
            for (char c : text + ",") {
                if (c == ',') {
                    if (!cur.empty()) out.push_back(std::stod(cur));
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            return out;
        };
        if (!slopes.empty()) config.sim.slopes = parse_list(slopes);
        if (!breaks_at.empty()) config.sim.breakpoints = parse_list(breaks_at);
        if (config.cmd == segtrend::Subcommand::simulate) {
            auto origin = CivilDate::parse_iso(sim_origin);
            if (!origin) throw CLI::ValidationError("--origin-date", "expected YYYY-MM-DD");
            config.sim.origin = *origin;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return segtrend::run(config, std::cout, std::cerr);
}
