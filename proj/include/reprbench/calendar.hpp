#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "reprbench/datetime.hpp"
#include "reprbench/errors.hpp"

namespace reprbench {

// The 8 calendar features of a target timestamp, in this fixed order.
struct CalendarVector {
    double hour_sin = 0.0;
    double hour_cos = 1.0;
    double dow_sin = 0.0;
    double dow_cos = 1.0;
    double doy_sin = 0.0;
    double doy_cos = 1.0;
    double weekend = 0.0;
    double holiday = 0.0;

    static constexpr std::size_t kSize = 8;

    std::array<double, kSize> to_array() const {
        return {hour_sin, hour_cos, dow_sin, dow_cos, doy_sin, doy_cos, weekend, holiday};
    }
};

// Set of local-time holiday dates, stored as days since the epoch.
class HolidayCalendar {
public:
    void add(const CivilDate& d) { days_.insert(days_from_civil(d.year, d.month, d.day)); }
    bool contains(const CivilDate& d) const {
        return days_.count(days_from_civil(d.year, d.month, d.day)) > 0;
    }
    std::size_t size() const { return days_.size(); }

private:
    std::set<std::int64_t> days_;
};

// One YYYY-MM-DD date per non-empty line; duplicates collapse.
inline HolidayCalendar load_holidays(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open holiday file: " + path);
    HolidayCalendar cal;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto date = parse_iso_date(line);
        if (!date)
            throw UnparsableDate("line " + std::to_string(line_no) + ": bad date '" + line + "'");
        cal.add(*date);
    }
    return cal;
}

// Encodes the calendar features at local time t + tz_offset_hours. Hour uses
// period 24, day of week (Monday=0) period 7, day of year (1-based) period 366.
// Weekend covers Saturday and Sunday; holiday membership is by local date.
inline CalendarVector encode_calendar(EpochSeconds t_utc, const HolidayCalendar& holidays,
                                      int tz_offset_hours = 1) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const EpochSeconds local = t_utc + static_cast<EpochSeconds>(tz_offset_hours) * kSecondsPerHour;
    const CivilTime ct = civil_from_epoch(local);
    const int dow = day_of_week_monday0(local);
    const int doy = day_of_year(ct.date);

    CalendarVector v;
    const double hour_angle = kTwoPi * static_cast<double>(ct.hour) / 24.0;
    const double dow_angle = kTwoPi * static_cast<double>(dow) / 7.0;
    const double doy_angle = kTwoPi * static_cast<double>(doy) / 366.0;
    v.hour_sin = std::sin(hour_angle);
    v.hour_cos = std::cos(hour_angle);
    v.dow_sin = std::sin(dow_angle);
    v.dow_cos = std::cos(dow_angle);
    v.doy_sin = std::sin(doy_angle);
    v.doy_cos = std::cos(doy_angle);
    v.weekend = (dow == 5 || dow == 6) ? 1.0 : 0.0;
    v.holiday = holidays.contains(ct.date) ? 1.0 : 0.0;
    return v;
}

}  // namespace reprbench
