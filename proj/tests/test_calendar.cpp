#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <string>

#include "oracles.hpp"
#include "reprbench/calendar.hpp"
#include "testutil.hpp"

using namespace reprbench;

namespace {
const std::string kBundledHolidays = std::string(REPRBENCH_SOURCE_DIR) + "/data/holidays_de.txt";
}

TEST(Calendar, HourEncoding) {
    HolidayCalendar none;
    // local hour 0 (UTC 23:00 previous day with +1 offset)
    CalendarVector v = encode_calendar(epoch_from_civil(2019, 6, 4, 23), none, 1);
    EXPECT_DOUBLE_EQ(v.hour_sin, 0.0);
    EXPECT_DOUBLE_EQ(v.hour_cos, 1.0);
    // local hour 6: quarter period
    v = encode_calendar(epoch_from_civil(2019, 6, 5, 5), none, 1);
    EXPECT_NEAR(v.hour_sin, 1.0, 1e-12);
    EXPECT_NEAR(v.hour_cos, 0.0, 1e-12);
}

TEST(Calendar, WeekendAndHolidayFlags) {
    HolidayCalendar hol;
    hol.add({2019, 1, 1});
    // 2019-03-16 local is a Saturday, not a holiday
    CalendarVector v = encode_calendar(epoch_from_civil(2019, 3, 16, 11), hol, 1);
    EXPECT_DOUBLE_EQ(v.weekend, 1.0);
    EXPECT_DOUBLE_EQ(v.holiday, 0.0);
    // Monday
    v = encode_calendar(epoch_from_civil(2019, 3, 18, 11), hol, 1);
    EXPECT_DOUBLE_EQ(v.weekend, 0.0);
    // 2019-01-01 is in the calendar
    v = encode_calendar(epoch_from_civil(2019, 1, 1, 11), hol, 1);
    EXPECT_DOUBLE_EQ(v.holiday, 1.0);
}

TEST(Calendar, TzOffsetShiftsTheLocalDate) {
    HolidayCalendar hol;
    hol.add({2019, 1, 1});
    // 23:30 UTC on Dec 31 is already Jan 1 in local time with +1
    const EpochSeconds t = epoch_from_civil(2018, 12, 31, 23, 30);
    EXPECT_DOUBLE_EQ(encode_calendar(t, hol, 1).holiday, 1.0);
    EXPECT_DOUBLE_EQ(encode_calendar(t, hol, 0).holiday, 0.0);
}

TEST(Calendar, NewYear2019IsInBundledFile) {
    const HolidayCalendar hol = load_holidays(kBundledHolidays);
    const CalendarVector v = encode_calendar(epoch_from_civil(2019, 1, 1, 11), hol, 1);
    EXPECT_DOUBLE_EQ(v.holiday, 1.0);
}

// Reconstructs the nationwide holiday set from first principles (fixed dates
// plus the Easter-bound ones from the computus) and requires the bundled file
// to match it exactly.
TEST(Calendar, BundledFileMatchesComputus) {
    std::set<std::string> expected;
    for (int year = 2014; year <= 2019; ++year) {
        const auto [em, ed] = oracles::easter_sunday(year);
        const std::int64_t easter = days_from_civil(year, em, ed);
        auto add_days = [&](std::int64_t offset) {
            expected.insert(format_iso_date(civil_from_days(easter + offset)));
        };
        add_days(-2);  // Good Friday
        add_days(1);   // Easter Monday
        add_days(39);  // Ascension
        add_days(50);  // Whit Monday
        for (const auto& [m, d] : {std::pair{1, 1}, {5, 1}, {10, 3}, {12, 25}, {12, 26}})
            expected.insert(format_iso_date({year, m, d}));
    }
    expected.insert("2017-10-31");  // Reformation Day, nationwide only in 2017

    std::set<std::string> bundled;
    std::ifstream in(kBundledHolidays);
    ASSERT_TRUE(in.good());
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        bundled.insert(line);
    }
    EXPECT_EQ(bundled, expected);

    const HolidayCalendar cal = load_holidays(kBundledHolidays);
    EXPECT_EQ(cal.size(), expected.size());
}

TEST(LoadHolidays, ParsesAndDeduplicates) {
    testutil::TempDir tmp("holidays");
    const std::string path = tmp.path("h.txt").string();
    {
        std::ofstream out(path);
        out << "2019-01-01\n2019-10-03\n";
    }
    EXPECT_EQ(load_holidays(path).size(), 2u);
    {
        std::ofstream out(path);
        out << "2019-01-01\n2019-01-01\n";
    }
    EXPECT_EQ(load_holidays(path).size(), 1u);
}

TEST(LoadHolidays, BadDateReportsLine) {
    testutil::TempDir tmp("holidays");
    const std::string path = tmp.path("h.txt").string();
    {
        std::ofstream out(path);
        out << "2019-01-01\n2019-13-01\n";
    }
    try {
        load_holidays(path);
        FAIL() << "expected UnparsableDate";
    } catch (const UnparsableDate& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(Calendar, TrigIdentityAndBounds) {
    HolidayCalendar none;
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const EpochSeconds t = epoch_from_civil(2014, 1, 1) +
                               static_cast<EpochSeconds>(rng.below(6 * 8760)) * kSecondsPerHour;
        const CalendarVector v = encode_calendar(t, none, 1);
        EXPECT_NEAR(v.hour_sin * v.hour_sin + v.hour_cos * v.hour_cos, 1.0, 1e-12);
        EXPECT_NEAR(v.dow_sin * v.dow_sin + v.dow_cos * v.dow_cos, 1.0, 1e-12);
        EXPECT_NEAR(v.doy_sin * v.doy_sin + v.doy_cos * v.doy_cos, 1.0, 1e-12);
        for (double x : v.to_array()) {
            EXPECT_GE(x, -1.0);
            EXPECT_LE(x, 1.0);
        }
        EXPECT_TRUE(v.weekend == 0.0 || v.weekend == 1.0);
        EXPECT_TRUE(v.holiday == 0.0 || v.holiday == 1.0);
    }
}

TEST(Calendar, WeeklyPeriodicityOfDow) {
    HolidayCalendar none;
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const EpochSeconds t = epoch_from_civil(2015, 1, 1) +
                               static_cast<EpochSeconds>(rng.below(3 * 8760)) * kSecondsPerHour;
        const CalendarVector a = encode_calendar(t, none, 1);
        const CalendarVector b = encode_calendar(t + 7 * kSecondsPerDay, none, 1);
        EXPECT_NEAR(a.dow_sin, b.dow_sin, 1e-9);
        EXPECT_NEAR(a.dow_cos, b.dow_cos, 1e-9);
    }
}

TEST(Calendar, EncodeIsPure) {
    const HolidayCalendar hol = load_holidays(kBundledHolidays);
    const EpochSeconds t = epoch_from_civil(2017, 10, 31, 12);
    const CalendarVector a = encode_calendar(t, hol, 1);
    const CalendarVector b = encode_calendar(t, hol, 1);
    EXPECT_EQ(a.to_array(), b.to_array());
    EXPECT_DOUBLE_EQ(a.holiday, 1.0);
}
