#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace reprbench {

// All timestamps in this library are UTC epoch seconds on an hourly grid.
using EpochSeconds = std::int64_t;

inline constexpr std::int64_t kSecondsPerHour = 3600;
inline constexpr std::int64_t kSecondsPerDay = 86400;

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    friend bool operator==(const CivilDate& a, const CivilDate& b) {
        return a.year == b.year && a.month == b.month && a.day == b.day;
    }
};

struct CivilTime {
    CivilDate date;
    int hour = 0;
    int minute = 0;
    int second = 0;
};

constexpr bool is_leap_year(int y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr int days_in_month(int y, int m) {
    constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap_year(y)) return 29;
    return lengths[m - 1];
}

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's algorithm).
constexpr std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

constexpr EpochSeconds epoch_from_civil(int y, int mo, int d, int h = 0, int mi = 0, int s = 0) {
    return days_from_civil(y, mo, d) * kSecondsPerDay + h * 3600 + mi * 60 + s;
}

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline CivilTime civil_from_epoch(EpochSeconds t) {
    const std::int64_t days = floor_div(t, kSecondsPerDay);
    std::int64_t rem = t - days * kSecondsPerDay;
    CivilTime ct;
    ct.date = civil_from_days(days);
    ct.hour = static_cast<int>(rem / 3600);
    rem %= 3600;
    ct.minute = static_cast<int>(rem / 60);
    ct.second = static_cast<int>(rem % 60);
    return ct;
}

// Monday = 0 .. Sunday = 6. 1970-01-01 was a Thursday.
inline int day_of_week_monday0(EpochSeconds t) {
    const std::int64_t days = floor_div(t, kSecondsPerDay);
    return static_cast<int>(((days % 7) + 10) % 7);
}

// 1 .. 365/366
inline int day_of_year(const CivilDate& d) {
    static constexpr int cum[] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    int doy = cum[d.month - 1] + d.day;
    if (d.month > 2 && is_leap_year(d.year)) ++doy;
    return doy;
}

namespace detail {
inline bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}
}  // namespace detail

// "YYYY-MM-DD" -> CivilDate, validating the calendar fields.
inline std::optional<CivilDate> parse_iso_date(std::string_view s) {
    int y, m, d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!detail::read_int(s, 0, 4, y) || !detail::read_int(s, 5, 2, m) || !detail::read_int(s, 8, 2, d))
        return std::nullopt;
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) return std::nullopt;
    return CivilDate{y, m, d};
}

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM", "YYYY-MM-DDTHH:MM:SS",
// optionally suffixed with "Z" or "+00:00"/"+0000". Interpreted as UTC.
inline std::optional<EpochSeconds> parse_iso_datetime(std::string_view s) {
    if (s.size() < 10) return std::nullopt;
    auto date = parse_iso_date(s.substr(0, 10));
    if (!date) return std::nullopt;
    int h = 0, mi = 0, sec = 0;
    std::string_view rest = s.substr(10);
    if (!rest.empty()) {
        if (rest[0] != 'T' && rest[0] != ' ') return std::nullopt;
        rest.remove_prefix(1);
        if (!detail::read_int(rest, 0, 2, h) || rest.size() < 5 || rest[2] != ':' ||
            !detail::read_int(rest, 3, 2, mi))
            return std::nullopt;
        rest.remove_prefix(5);
        if (!rest.empty() && rest[0] == ':') {
            if (!detail::read_int(rest, 1, 2, sec)) return std::nullopt;
            rest.remove_prefix(3);
        }
        if (!rest.empty()) {
            if (rest == "Z" || rest == "+00:00" || rest == "+0000" || rest == "UTC")
                rest = {};
            else
                return std::nullopt;
        }
        if (h > 23 || mi > 59 || sec > 60) return std::nullopt;
    }
    return epoch_from_civil(date->year, date->month, date->day, h, mi, sec);
}

inline std::string format_iso(EpochSeconds t) {
    const CivilTime ct = civil_from_epoch(t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", ct.date.year, ct.date.month,
                  ct.date.day, ct.hour, ct.minute, ct.second);
    return buf;
}

inline std::string format_iso_date(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace reprbench
