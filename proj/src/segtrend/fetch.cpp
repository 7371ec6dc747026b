#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "segtrend/fetch.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "segtrend/errors.hpp"
#include "segtrend/panel.hpp"

namespace segtrend {

namespace {

constexpr const char* kHost = "https://storage.covid19datahub.io";

void require_country_code(const std::string& country) {
    const bool ok = country.size() == 3 &&
                    std::all_of(country.begin(), country.end(),
                                [](unsigned char c) { return std::isupper(c); });
    if (!ok)
        throw std::invalid_argument("country code must be ISO alpha-3 uppercase, got '" + country +
                                    "'");
}

// Required columns must be present in the header line; extras are fine.
void verify_schema(const std::string& body, const std::string& country) {
    std::istringstream in(body);
    try {
        (void)parse_csv(in, country);
    } catch (const ParseError& e) {
        throw SchemaError("fetched data for " + country + " failed validation: " + e.what());
    }
}

void atomic_write(const std::filesystem::path& path, const std::string& body) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << body;
        if (!out) throw FetchError("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::filesystem::path> newest_cached(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) return std::nullopt;
    std::optional<std::filesystem::path> best;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        if (!best || best->filename().string() < entry.path().filename().string())
            best = entry.path();
    }
    return best;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

Transport https_transport() {
    return [](const std::string& country) -> std::optional<std::string> {
        httplib::Client client(kHost);
        client.set_follow_location(true);
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        auto res = client.Get("/country/" + country + ".csv");
        if (!res || res->status != 200) return std::nullopt;
        return res->body;
    };
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("SEGTREND_CACHE")) return env;
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "segtrend";
    return ".segtrend-cache";
}

CivilDate today_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    return CivilDate{tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday};
}

FetchResult fetch_remote(const std::string& country, const std::filesystem::path& cache_dir,
                         const Transport& transport, CivilDate today) {
    require_country_code(country);
    const std::filesystem::path country_dir = cache_dir / country;
    const std::filesystem::path today_path = country_dir / (today.iso() + ".csv");

    if (std::filesystem::is_regular_file(today_path))
        return FetchResult{slurp(today_path), today_path, true, false};

    if (auto body = transport(country)) {
        verify_schema(*body, country);
        atomic_write(today_path, *body);
        return FetchResult{std::move(*body), today_path, false, false};
    }

    if (auto cached = newest_cached(country_dir))
        return FetchResult{slurp(*cached), *cached, true, true};

    throw FetchError("download failed for " + country + " and no cached copy exists under " +
                     country_dir.string());
}

}  // namespace segtrend
