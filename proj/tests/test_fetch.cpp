#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "segtrend/errors.hpp"
#include "segtrend/fetch.hpp"

using namespace segtrend;
namespace fs = std::filesystem;

namespace {

const std::string kGoodBody =
    "date,confirmed,recovered,deaths,population\n"
    "2020-03-18,98,0,9,83000000\n"
    "2020-03-19,192,5,12,83000000\n"
    "2020-03-20,359,10,17,83000000\n";

struct TempDir {
    fs::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() /
               ("segtrend-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("fetch_remote caches verified downloads atomically") {
    TempDir dir;
    int calls = 0;
    Transport ok = [&](const std::string&) -> std::optional<std::string> {
        ++calls;
        return kGoodBody;
    };
    const CivilDate today{2020, 11, 25};

    auto first = fetch_remote("TUR", dir.path, ok, today);
    CHECK(first.body == kGoodBody);
    CHECK(!first.from_cache);
    CHECK(!first.stale);
    CHECK(fs::is_regular_file(dir.path / "TUR" / "2020-11-25.csv"));
    CHECK(calls == 1);

    // same-day repeat is served from the cache without touching the network
    auto second = fetch_remote("TUR", dir.path, ok, today);
    CHECK(second.from_cache);
    CHECK(!second.stale);
    CHECK(second.body == kGoodBody);
    CHECK(calls == 1);
}

TEST_CASE("warm cache survives a transport failure with a staleness flag") {
    TempDir dir;
    Transport ok = [](const std::string&) { return std::optional<std::string>(kGoodBody); };
    Transport down = [](const std::string&) { return std::optional<std::string>(); };

    fetch_remote("TUR", dir.path, ok, CivilDate{2020, 11, 20});
    auto res = fetch_remote("TUR", dir.path, down, CivilDate{2020, 11, 25});
    CHECK(res.from_cache);
    CHECK(res.stale);
    CHECK(res.body == kGoodBody);
    CHECK(res.path.filename() == "2020-11-20.csv");
}

TEST_CASE("cold cache plus transport failure raises FetchError") {
    TempDir dir;
    Transport down = [](const std::string&) { return std::optional<std::string>(); };
    CHECK_THROWS_AS(fetch_remote("TUR", dir.path, down, CivilDate{2020, 11, 25}), FetchError);
}

TEST_CASE("schema drift is rejected and never cached") {
    TempDir dir;
    Transport drifted = [](const std::string&) {
        return std::optional<std::string>("date,confirmed,recovered\n2020-01-01,1,0\n");
    };
    CHECK_THROWS_AS(fetch_remote("TUR", dir.path, drifted, CivilDate{2020, 11, 25}), SchemaError);
    CHECK(!fs::exists(dir.path / "TUR" / "2020-11-25.csv"));
}

TEST_CASE("country codes are validated") {
    TempDir dir;
    Transport ok = [](const std::string&) { return std::optional<std::string>(kGoodBody); };
    CHECK_THROWS_AS(fetch_remote("tr", dir.path, ok), std::invalid_argument);
    CHECK_THROWS_AS(fetch_remote("TURKEY", dir.path, ok), std::invalid_argument);
}

TEST_CASE("SEGTREND_CACHE overrides the default cache directory") {
    ::setenv("SEGTREND_CACHE", "/tmp/segtrend-env-cache", 1);
    CHECK(default_cache_dir() == fs::path("/tmp/segtrend-env-cache"));
    ::unsetenv("SEGTREND_CACHE");
    CHECK(default_cache_dir() != fs::path("/tmp/segtrend-env-cache"));
}
