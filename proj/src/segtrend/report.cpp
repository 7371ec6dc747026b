#include "segtrend/report.hpp"

#include <cmath>
#include <cstdio>

#include "segtrend/design.hpp"

namespace segtrend {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v, const char* spec = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string render_date(const CivilDate& d, DateStyle style) {
    return style == DateStyle::paper ? d.paper_style() : d.iso();
}

Eigen::VectorXd coef_vector(const FitReport& report) {
    Eigen::VectorXd coef(static_cast<Eigen::Index>(report.coefficients.size()));
    for (std::size_t i = 0; i < report.coefficients.size(); ++i)
        coef(static_cast<Eigen::Index>(i)) = report.coefficients[i];
    return coef;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hash_hex(std::string_view bytes) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

FitReport build_report(const SegmentedFit& fit, const std::optional<TrendSummary>& trend) {
    FitReport report;
    report.origin = fit.origin;
    report.n = fit.n;
    report.k = static_cast<int>(fit.breakpoints.size());
    report.coefficients.assign(fit.coefficients.data(),
                               fit.coefficients.data() + fit.coefficients.size());
    report.slopes = fit.slopes;
    report.covariance.resize(static_cast<std::size_t>(fit.covariance.rows()));
    for (Eigen::Index i = 0; i < fit.covariance.rows(); ++i) {
        auto& row = report.covariance[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(fit.covariance.cols()));
        for (Eigen::Index j = 0; j < fit.covariance.cols(); ++j)
            row[static_cast<std::size_t>(j)] = fit.covariance(i, j);
    }
    report.rss = fit.rss;
    report.iterations = fit.iterations;
    report.converged = fit.converged;
    report.confidence = fit.confidence;

    const auto dates = breakpoint_dates(fit);
    for (int s = 0; s < report.k; ++s) {
        BreakpointRow row;
        row.day = fit.breakpoints[static_cast<std::size_t>(s)];
        row.date = dates[static_cast<std::size_t>(s)];
        row.se = fit.breakpoint_se[static_cast<std::size_t>(s)];
        row.ci = fit.breakpoint_ci[static_cast<std::size_t>(s)];
        report.breakpoints.push_back(row);
    }

    std::vector<int> bounds;
    bounds.push_back(1);
    for (const auto& row : report.breakpoints)
        bounds.push_back(static_cast<int>(std::round(row.day)));
    bounds.push_back(fit.n);
    for (int j = 0; j <= report.k; ++j) {
        SegmentRow seg;
        seg.start_day = bounds[static_cast<std::size_t>(j)];
        seg.end_day = bounds[static_cast<std::size_t>(j) + 1];
        seg.slope = fit.slopes[static_cast<std::size_t>(j)];
        if (trend) seg.dpc = trend->segments[static_cast<std::size_t>(j)].dpc;
        report.segments.push_back(seg);
    }

    if (trend) {
        AdpcBlock block;
        block.estimate = trend->adpc.estimate;
        block.se = trend->adpc.se;
        block.ci = trend->adpc.ci;
        block.arithmetic = trend->adpc_arithmetic;
        report.adpc = block;
    }
    return report;
}

ordered_json report_to_json(const FitReport& report, DateStyle style) {
    ordered_json j;
    ordered_json model;
    model["country"] = report.country;
    model["series"] = report.series;
    model["per_million"] = report.per_million;
    model["log"] = report.log_scale;
    model["origin_date"] = render_date(report.origin, style);
    model["n"] = report.n;
    model["k"] = report.k;
    model["coefficients"] = report.coefficients;
    model["slopes"] = report.slopes;
    model["rss"] = report.rss;
    model["iterations"] = report.iterations;
    model["converged"] = report.converged;
    model["confidence"] = report.confidence;
    model["covariance"] = report.covariance;
    j["model"] = std::move(model);

    ordered_json breaks = ordered_json::array();
    for (const auto& row : report.breakpoints) {
        ordered_json b;
        b["day"] = row.day;
        b["date"] = render_date(row.date, style);
        b["se"] = row.se;
        b["ci"] = {row.ci.first, row.ci.second};
        breaks.push_back(std::move(b));
    }
    j["breakpoints"] = std::move(breaks);

    ordered_json segments = ordered_json::array();
    for (const auto& seg : report.segments) {
        ordered_json s;
        s["start"] = seg.start_day;
        s["end"] = seg.end_day;
        s["slope"] = seg.slope;
        if (seg.dpc)
            s["dpc"] = *seg.dpc;
        else
            s["dpc"] = nullptr;
        segments.push_back(std::move(s));
    }
    j["segments"] = std::move(segments);

    if (report.adpc) {
        ordered_json a;
        a["estimate"] = report.adpc->estimate;
        a["se"] = report.adpc->se;
        a["ci"] = {report.adpc->ci.first, report.adpc->ci.second};
        a["arithmetic"] = report.adpc->arithmetic;
        j["adpc"] = std::move(a);
    } else {
        j["adpc"] = nullptr;
    }

    ordered_json quality;
    quality["confirmed_revisions"] = report.quality.confirmed_revisions;
    quality["recovered_revisions"] = report.quality.recovered_revisions;
    quality["deaths_revisions"] = report.quality.deaths_revisions;
    quality["negative_active"] = report.quality.negative_active;
    j["quality"] = std::move(quality);

    ordered_json provenance;
    provenance["input_hash"] = report.input_hash;
    provenance["config"] = report.config_echo;
    j["provenance"] = std::move(provenance);
    return j;
}

FitReport report_from_json(const ordered_json& j) {
    FitReport report;
    const auto& model = j.at("model");
    report.country = model.at("country").get<std::string>();
    report.series = model.at("series").get<std::string>();
    report.per_million = model.at("per_million").get<bool>();
    report.log_scale = model.at("log").get<bool>();
    report.origin = *CivilDate::parse_iso(model.at("origin_date").get<std::string>());
    report.n = model.at("n").get<int>();
    report.k = model.at("k").get<int>();
    report.coefficients = model.at("coefficients").get<std::vector<double>>();
    report.slopes = model.at("slopes").get<std::vector<double>>();
    report.rss = model.at("rss").get<double>();
    report.iterations = model.at("iterations").get<int>();
    report.converged = model.at("converged").get<bool>();
    report.confidence = model.at("confidence").get<double>();
    report.covariance = model.at("covariance").get<std::vector<std::vector<double>>>();

    for (const auto& b : j.at("breakpoints")) {
        BreakpointRow row;
        row.day = b.at("day").get<double>();
        row.date = *CivilDate::parse_iso(b.at("date").get<std::string>());
        row.se = b.at("se").get<double>();
        row.ci = {b.at("ci")[0].get<double>(), b.at("ci")[1].get<double>()};
        report.breakpoints.push_back(row);
    }
    for (const auto& s : j.at("segments")) {
        SegmentRow seg;
        seg.start_day = s.at("start").get<int>();
        seg.end_day = s.at("end").get<int>();
        seg.slope = s.at("slope").get<double>();
        if (!s.at("dpc").is_null()) seg.dpc = s.at("dpc").get<double>();
        report.segments.push_back(seg);
    }
    if (!j.at("adpc").is_null()) {
        const auto& a = j.at("adpc");
        AdpcBlock block;
        block.estimate = a.at("estimate").get<double>();
        block.se = a.at("se").get<double>();
        block.ci = {a.at("ci")[0].get<double>(), a.at("ci")[1].get<double>()};
        block.arithmetic = a.at("arithmetic").get<double>();
        report.adpc = block;
    }
    const auto& quality = j.at("quality");
    report.quality.confirmed_revisions = quality.at("confirmed_revisions").get<int>();
    report.quality.recovered_revisions = quality.at("recovered_revisions").get<int>();
    report.quality.deaths_revisions = quality.at("deaths_revisions").get<int>();
    report.quality.negative_active = quality.at("negative_active").get<int>();
    report.input_hash = j.at("provenance").at("input_hash").get<std::string>();
    report.config_echo = j.at("provenance").at("config");
    return report;
}

namespace {

std::string emit_csv(const FitReport& report, DateStyle style) {
    std::string out =
        "kind,index,start_day,end_day,start_date,end_date,slope,dpc,break_day,break_date,"
        "break_se,break_ci_low,break_ci_high\n";
    for (std::size_t i = 0; i < report.segments.size(); ++i) {
        const auto& seg = report.segments[i];
        out += "segment," + std::to_string(i + 1);
        out += ',' + std::to_string(seg.start_day) + ',' + std::to_string(seg.end_day);
        out += ',' + render_date(report.origin.plus_days(seg.start_day - 1), style);
        out += ',' + render_date(report.origin.plus_days(seg.end_day - 1), style);
        out += ',' + fmt(seg.slope);
        out += ',';
        if (seg.dpc) out += fmt(*seg.dpc);
        if (i < report.breakpoints.size()) {
            const auto& b = report.breakpoints[i];
            out += ',' + fmt(b.day) + ',' + render_date(b.date, style) + ',' + fmt(b.se) + ',' +
                   fmt(b.ci.first) + ',' + fmt(b.ci.second);
        } else {
            out += ",,,,,";
        }
        out += '\n';
    }
    if (report.adpc) {
        // Summary row: estimate in the slope column, SE in dpc, CI in the
        // break_ci columns.
        out += "adpc,,,,,," + fmt(report.adpc->estimate) + ',' + fmt(report.adpc->se) + ",,,," +
               fmt(report.adpc->ci.first) + ',' + fmt(report.adpc->ci.second) + '\n';
    }
    return out;
}

std::string emit_text(const FitReport& report, DateStyle style) {
    std::string out;
    out += "Breakpoint regression estimates and dates";
    if (!report.country.empty()) out += " - " + report.country;
    out += " (" + report.series;
    if (report.per_million) out += ", per 1M";
    if (report.log_scale) out += ", log scale";
    out += ")\n";
    out += "  n=" + std::to_string(report.n) + "  origin=" + render_date(report.origin, style) +
           "  breaks=" + std::to_string(report.k) + "  rss=" + fmt(report.rss, "%.6g") +
           "  iterations=" + std::to_string(report.iterations) +
           (report.converged ? "  converged" : "  NOT converged") + "\n\n";

    char line[160];
    std::snprintf(line, sizeof line, "  %-20s %-20s %-12s %-10s %s\n", "Parameter estimates",
                  "Breakpoint estimates", "Dates", "SE", "95% CI");
    out += line;
    for (std::size_t i = 0; i < report.segments.size(); ++i) {
        const std::string slope = fmt(report.segments[i].slope, "%.4g");
        if (i < report.breakpoints.size()) {
            const auto& b = report.breakpoints[i];
            std::snprintf(line, sizeof line, "  %-20s %-20s %-12s %-10s [%s, %s]\n", slope.c_str(),
                          fmt(b.day, "%.1f").c_str(), render_date(b.date, style).c_str(),
                          fmt(b.se, "%.3g").c_str(), fmt(b.ci.first, "%.1f").c_str(),
                          fmt(b.ci.second, "%.1f").c_str());
        } else {
            std::snprintf(line, sizeof line, "  %-20s\n", slope.c_str());
        }
        out += line;
    }
    if (report.adpc) {
        out += "\n  ADPC: " + fmt(report.adpc->estimate, "%.4g") + "%  SE " +
               fmt(report.adpc->se, "%.4g") + "  95% CI [" + fmt(report.adpc->ci.first, "%.4g") +
               ", " + fmt(report.adpc->ci.second, "%.4g") + "]\n";
    }
    return out;
}

}  // namespace

std::string emit_report(const FitReport& report, OutputFormat format, DateStyle style) {
    switch (format) {
        case OutputFormat::json: return report_to_json(report, style).dump(2) + "\n";
        case OutputFormat::csv: return emit_csv(report, style);
        case OutputFormat::text: return emit_text(report, style);
    }
    return {};
}

std::string emit_plot_data(const FitReport& report, const TimeSeries& observed, DateStyle style) {
    const Eigen::VectorXd coef = coef_vector(report);
    std::vector<double> taus;
    for (const auto& row : report.breakpoints) taus.push_back(row.day);

    std::string out = "day,date,observed,fitted,is_breakpoint,ci_low,ci_high\n";
    for (int t = 1; t <= observed.n(); ++t) {
        int hit = -1;
        for (std::size_t s = 0; s < taus.size(); ++s)
            if (static_cast<int>(std::round(taus[s])) == t) hit = static_cast<int>(s);
        out += std::to_string(t) + ',' + render_date(observed.date_at(t), style) + ',' +
               fmt(observed.value(t)) + ',' + fmt(evaluate(coef, taus, t)) + ',' +
               (hit >= 0 ? "1" : "0");
        if (hit >= 0) {
            const auto& ci = report.breakpoints[static_cast<std::size_t>(hit)].ci;
            out += ',' + fmt(ci.first) + ',' + fmt(ci.second);
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

}  // namespace segtrend
