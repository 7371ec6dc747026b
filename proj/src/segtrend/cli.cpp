#include "segtrend/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "segtrend/errors.hpp"
#include "segtrend/fetch.hpp"
#include "segtrend/pipeline.hpp"

namespace segtrend {

namespace {

using nlohmann::ordered_json;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const RunConfig& config, std::ostream& out, const std::string& payload) {
    if (config.output_path) {
        std::ofstream f(*config.output_path, std::ios::binary | std::ios::trunc);
        if (!f) throw DataError("cannot write output file " + *config.output_path);
        f << payload;
    } else {
        out << payload;
    }
}

std::string fmt(double v, const char* spec = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

ordered_json config_echo(const RunConfig& config) {
    ordered_json j;
    switch (config.cmd) {
        case Subcommand::fit: j["subcommand"] = "fit"; break;
        case Subcommand::compare: j["subcommand"] = "compare"; break;
        case Subcommand::fetch: j["subcommand"] = "fetch"; break;
        case Subcommand::simulate: j["subcommand"] = "simulate"; break;
    }
    if (config.input) j["input"] = *config.input;
    if (!config.countries.empty()) j["countries"] = config.countries;
    j["series"] = series_kind_name(config.selector.kind);
    j["per_million"] = config.selector.per_million;
    j["log"] = config.selector.log_scale;
    j["threshold"] = config.threshold;
    if (config.start_date) j["start_date"] = config.start_date->iso();
    if (config.fixed_breaks)
        j["breaks"] = *config.fixed_breaks;
    else
        j["max_breaks"] = config.max_breaks;
    if (config.min_segment) j["min_segment"] = *config.min_segment;
    j["confidence"] = config.confidence;
    j["fill_gaps"] = config.fill_gaps;
    j["clamp_negative"] = config.clamp_negative;
    return j;
}

PipelineOptions pipeline_options(const RunConfig& config) {
    PipelineOptions opts;
    opts.selector = config.selector;
    opts.threshold = config.threshold;
    opts.start_date = config.start_date;
    opts.max_breaks = config.max_breaks;
    opts.fixed_breaks = config.fixed_breaks;
    opts.min_segment = config.min_segment;
    opts.confidence = config.confidence;
    opts.fill = config.fill_gaps;
    opts.clamp_negative = config.clamp_negative;
    return opts;
}

int run_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (!config.input) throw DataError("fit needs --input PATH");
    const std::string bytes = slurp_file(*config.input);
    CountryPanel panel = parse_csv_string(bytes);

    PipelineResult result = run_fit_pipeline(panel, pipeline_options(config));

    FitReport report = build_report(result.fit, result.trend);
    report.series = series_kind_name(config.selector.kind);
    report.per_million = config.selector.per_million;
    report.log_scale = config.selector.log_scale;
    report.quality = result.quality;
    report.input_hash = hash_hex(bytes);
    report.config_echo = config_echo(config);

    write_output(config, out, emit_report(report, config.format, config.date_style));
    if (config.plot_data_path) {
        std::ofstream f(*config.plot_data_path, std::ios::binary | std::ios::trunc);
        if (!f) throw DataError("cannot write plot data file " + *config.plot_data_path);
        f << emit_plot_data(report, result.observed, config.date_style);
    }
    if (!result.fit.converged) {
        err << "warning: refinement stopped at max iterations; best iterate reported\n";
        if (config.strict) return 2;
    }
    return 0;
}

int run_compare(const RunConfig& raw_config, std::ostream& out, std::ostream& err) {
    if (raw_config.countries.empty()) throw DataError("compare needs --countries LIST");
    std::set<std::string> codes(raw_config.countries.begin(), raw_config.countries.end());

    // Output (including the config echo) is independent of flag order.
    RunConfig config = raw_config;
    config.countries.assign(codes.begin(), codes.end());

    struct Row {
        std::string country;
        int n;
        int k;
        AdpcBlock adpc;
    };
    std::vector<Row> rows;
    bool any_nonconverged = false;
    for (const auto& code : codes) {
        const std::string path = config.data_dir + "/" + code + ".csv";
        CountryPanel panel = parse_csv_string(slurp_file(path), code);
        PipelineResult result = run_fit_pipeline(panel, pipeline_options(config));
        if (!result.fit.converged) {
            any_nonconverged = true;
            err << "warning: " << code << ": refinement stopped at max iterations\n";
        }
        if (!result.trend) throw DataError("compare needs the log-scale pipeline");
        Row row;
        row.country = code;
        row.n = result.fit.n;
        row.k = static_cast<int>(result.fit.breakpoints.size());
        row.adpc.estimate = result.trend->adpc.estimate;
        row.adpc.se = result.trend->adpc.se;
        row.adpc.ci = result.trend->adpc.ci;
        row.adpc.arithmetic = result.trend->adpc_arithmetic;
        rows.push_back(std::move(row));
    }

    std::string payload;
    if (config.format == OutputFormat::json) {
        ordered_json j;
        ordered_json list = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json r;
            r["country"] = row.country;
            r["n"] = row.n;
            r["k"] = row.k;
            r["adpc"] = row.adpc.estimate;
            r["se"] = row.adpc.se;
            r["ci"] = {row.adpc.ci.first, row.adpc.ci.second};
            list.push_back(std::move(r));
        }
        j["series"] = series_kind_name(config.selector.kind);
        j["per_million"] = config.selector.per_million;
        j["log"] = config.selector.log_scale;
        j["countries"] = std::move(list);
        j["config"] = config_echo(config);
        payload = j.dump(2) + "\n";
    } else if (config.format == OutputFormat::csv) {
        payload = "country,n,k,adpc,se,ci_low,ci_high\n";
        for (const auto& row : rows)
            payload += row.country + ',' + std::to_string(row.n) + ',' + std::to_string(row.k) +
                       ',' + fmt(row.adpc.estimate) + ',' + fmt(row.adpc.se) + ',' +
                       fmt(row.adpc.ci.first) + ',' + fmt(row.adpc.ci.second) + '\n';
    } else {
        char line[160];
        std::snprintf(line, sizeof line, "%-8s %-10s %-10s %-10s %-10s\n", "Country", "ADPC (%)",
                      "SE", "CI-L", "CI-U");
        payload = line;
        for (const auto& row : rows) {
            std::snprintf(line, sizeof line, "%-8s %-10s %-10s %-10s %-10s\n", row.country.c_str(),
                          fmt(row.adpc.estimate, "%.4g").c_str(), fmt(row.adpc.se, "%.4g").c_str(),
                          fmt(row.adpc.ci.first, "%.4g").c_str(),
                          fmt(row.adpc.ci.second, "%.4g").c_str());
            payload += line;
        }
    }
    write_output(config, out, payload);
    return config.strict && any_nonconverged ? 2 : 0;
}

int run_fetch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.countries.empty()) throw DataError("fetch needs --countries LIST");
    const std::filesystem::path cache =
        config.cache_dir ? std::filesystem::path(*config.cache_dir) : default_cache_dir();
    std::set<std::string> codes(config.countries.begin(), config.countries.end());
    for (const auto& code : codes) {
        const FetchResult result = fetch_remote(code, cache);
        if (result.stale)
            err << "warning: " << code << ": download failed, serving stale cache from "
                << result.path.filename().string() << "\n";
        out << code << ' ' << result.path.string() << ' ' << result.body.size() << " bytes"
            << (result.from_cache ? " (cached)" : "") << (result.stale ? " (stale)" : "") << "\n";
    }
    return 0;
}

int run_simulate(const RunConfig& config, std::ostream& out, std::ostream&) {
    if (!config.seed) throw DataError("simulate needs --seed N");
    const Simulation sim = simulate(config.sim, *config.seed);

    if (config.format == OutputFormat::csv) {
        std::string payload = "day,date,value\n";
        for (int t = 1; t <= sim.series.n(); ++t)
            payload += std::to_string(t) + ',' +
                       (config.date_style == DateStyle::paper ? sim.series.date_at(t).paper_style()
                                                              : sim.series.date_at(t).iso()) +
                       ',' + fmt(sim.series.value(t)) + '\n';
        write_output(config, out, payload);
        return 0;
    }

    ordered_json truth;
    truth["n"] = sim.truth.n;
    truth["intercept"] = sim.truth.intercept;
    truth["slopes"] = sim.truth.slopes;
    truth["breakpoints"] = sim.truth.breakpoints;
    truth["sigma"] = sim.truth.sigma;
    truth["origin_date"] = sim.truth.origin.iso();
    truth["seed"] = sim.seed;
    ordered_json j;
    j["truth"] = std::move(truth);
    ordered_json series;
    series["origin_date"] = sim.series.origin.iso();
    series["values"] = sim.series.values;
    j["series"] = std::move(series);
    write_output(config, out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.cmd) {
            case Subcommand::fit: return run_fit(config, out, err);
            case Subcommand::compare: return run_compare(config, out, err);
            case Subcommand::fetch: return run_fetch(config, out, err);
            case Subcommand::simulate: return run_simulate(config, out, err);
        }
        return 1;
    } catch (const FitError& e) {
        err << "fit error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace segtrend
