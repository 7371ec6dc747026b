#include "segtrend/date.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace segtrend {

namespace {

// Days between 1970-01-01 and y-m-d. Howard Hinnant's days_from_civil.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool parse_uint(std::string_view s, int& out) {
    if (s.empty()) return false;
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return false;
    out = v;
    return true;
}

int days_in_month(int y, int m) {
    static const int lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return m == 2 && leap ? 29 : lens[m - 1];
}

}  // namespace

std::optional<CivilDate> CivilDate::parse_iso(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    CivilDate out;
    if (!parse_uint(s.substr(0, 4), out.year) || !parse_uint(s.substr(5, 2), out.month) ||
        !parse_uint(s.substr(8, 2), out.day))
        return std::nullopt;
    if (out.month < 1 || out.month > 12) return std::nullopt;
    if (out.day < 1 || out.day > days_in_month(out.year, out.month)) return std::nullopt;
    return out;
}

CivilDate CivilDate::from_serial(std::int64_t days) {
    CivilDate out;
    civil_from_days(days, out.year, out.month, out.day);
    return out;
}

std::int64_t CivilDate::serial() const {
    return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
}

CivilDate CivilDate::plus_days(std::int64_t d) const { return from_serial(serial() + d); }

std::string CivilDate::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::string CivilDate::paper_style() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%d.%02d.%04d", day, month, year);
    return buf;
}

std::int64_t days_between(const CivilDate& from, const CivilDate& to) {
    return to.serial() - from.serial();
}

}  // namespace segtrend
