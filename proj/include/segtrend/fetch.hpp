#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "segtrend/date.hpp"

namespace segtrend {

// Returns the raw CSV body for a country code, or nullopt on transport
// failure. Injectable so the cache contract is testable offline.
using Transport = std::function<std::optional<std::string>(const std::string& country)>;

Transport https_transport();

struct FetchResult {
    std::string body;
    std::filesystem::path path;  // cache entry backing the returned bytes
    bool from_cache = false;
    bool stale = false;  // served from an older fetch after a transport failure
};

// SEGTREND_CACHE overrides; otherwise ~/.cache/segtrend (falling back to
// ./.segtrend-cache without a home directory).
std::filesystem::path default_cache_dir();

CivilDate today_utc();

// Downloads the country-level CSV, verifies the header schema, and stores
// it under <cache_dir>/<ISO-country>/<fetch-date>.csv with an atomic
// write-temp-then-rename. On transport failure the newest cached copy is
// returned with stale = true; a cold cache raises FetchError.
FetchResult fetch_remote(const std::string& country, const std::filesystem::path& cache_dir,
                         const Transport& transport = https_transport(),
                         CivilDate today = today_utc());

}  // namespace segtrend
