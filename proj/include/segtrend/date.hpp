#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace segtrend {

// Proleptic Gregorian calendar date with exact day arithmetic.
// Serial day numbers count from 1970-01-01 (the civil-days algorithm).
struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    static std::optional<CivilDate> parse_iso(std::string_view s);
    static CivilDate from_serial(std::int64_t days);

    std::int64_t serial() const;
    CivilDate plus_days(std::int64_t d) const;

    std::string iso() const;          // YYYY-MM-DD
    std::string paper_style() const;  // D.MM.YYYY (day unpadded)

    friend bool operator==(const CivilDate&, const CivilDate&) = default;
    friend bool operator<(const CivilDate& a, const CivilDate& b) {
        return a.serial() < b.serial();
    }
    friend bool operator<=(const CivilDate& a, const CivilDate& b) {
        return a.serial() <= b.serial();
    }
    friend bool operator>(const CivilDate& a, const CivilDate& b) { return b < a; }
    friend bool operator>=(const CivilDate& a, const CivilDate& b) { return b <= a; }
};

// Signed day count, to - from.
std::int64_t days_between(const CivilDate& from, const CivilDate& to);

}  // namespace segtrend
