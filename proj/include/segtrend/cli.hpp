#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "segtrend/panel.hpp"
#include "segtrend/report.hpp"
#include "segtrend/simulate.hpp"

namespace segtrend {

enum class Subcommand { fit, compare, fetch, simulate };

struct RunConfig {
    Subcommand cmd = Subcommand::fit;
    std::optional<std::string> input;    // fit
    std::vector<std::string> countries;  // compare, fetch
    std::string data_dir = "data";       // compare
    SeriesSelector selector;
    long long threshold = 100;
    std::optional<CivilDate> start_date;
    int max_breaks = 6;
    std::optional<int> fixed_breaks;
    std::optional<int> min_segment;
    double confidence = 0.95;
    bool fill_gaps = false;
    bool clamp_negative = false;
    bool strict = false;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> output_path;
    std::optional<std::string> plot_data_path;
    DateStyle date_style = DateStyle::iso;
    std::optional<std::uint64_t> seed;  // simulate
    SimulationSpec sim;                 // simulate
    std::optional<std::string> cache_dir;  // fetch
};

// Exit codes: 0 success, 1 data errors, 2 fit errors (and non-convergence
// under strict). Diagnostics go to err, data to the output path or out.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace segtrend
