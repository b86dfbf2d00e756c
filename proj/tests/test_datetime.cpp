#include <gtest/gtest.h>

#include "reprbench/datetime.hpp"
#include "reprbench/rng.hpp"

using namespace reprbench;

TEST(Datetime, CivilRoundTripKnownDates) {
    EXPECT_EQ(days_from_civil(1970, 1, 1), 0);
    EXPECT_EQ(days_from_civil(2015, 1, 1), 16436);
    const CivilDate d = civil_from_days(16436);
    EXPECT_EQ(d.year, 2015);
    EXPECT_EQ(d.month, 1);
    EXPECT_EQ(d.day, 1);
}

TEST(Datetime, CivilRoundTripRandom) {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t days =
            static_cast<std::int64_t>(rng.below(80000)) - 20000;  // ~1915..2189
        const CivilDate d = civil_from_days(days);
        EXPECT_EQ(days_from_civil(d.year, d.month, d.day), days);
        EXPECT_GE(d.month, 1);
        EXPECT_LE(d.month, 12);
        EXPECT_GE(d.day, 1);
        EXPECT_LE(d.day, days_in_month(d.year, d.month));
    }
}

TEST(Datetime, DayOfWeek) {
    EXPECT_EQ(day_of_week_monday0(epoch_from_civil(1970, 1, 1)), 3);   // Thursday
    EXPECT_EQ(day_of_week_monday0(epoch_from_civil(2019, 3, 18)), 0);  // Monday
    EXPECT_EQ(day_of_week_monday0(epoch_from_civil(2019, 1, 1)), 1);   // Tuesday
    EXPECT_EQ(day_of_week_monday0(epoch_from_civil(2019, 3, 16)), 5);  // Saturday
    EXPECT_EQ(day_of_week_monday0(epoch_from_civil(2019, 3, 17, 23)), 6);  // Sunday evening
}

TEST(Datetime, DayOfYear) {
    EXPECT_EQ(day_of_year({2019, 1, 1}), 1);
    EXPECT_EQ(day_of_year({2019, 12, 31}), 365);
    EXPECT_EQ(day_of_year({2016, 12, 31}), 366);
    EXPECT_EQ(day_of_year({2016, 3, 1}), 61);
}

TEST(Datetime, ParseIsoDatetime) {
    EXPECT_EQ(parse_iso_datetime("1970-01-01T00:00:00Z"), 0);
    EXPECT_EQ(parse_iso_datetime("2015-01-01T01:00Z"), epoch_from_civil(2015, 1, 1, 1));
    EXPECT_EQ(parse_iso_datetime("2015-01-01"), epoch_from_civil(2015, 1, 1));
    EXPECT_EQ(parse_iso_datetime("2015-06-01T12:30:15"), epoch_from_civil(2015, 6, 1, 12, 30, 15));
    EXPECT_FALSE(parse_iso_datetime("2015-13-01T00:00Z").has_value());
    EXPECT_FALSE(parse_iso_datetime("2015-02-30T00:00Z").has_value());
    EXPECT_FALSE(parse_iso_datetime("garbage").has_value());
    EXPECT_FALSE(parse_iso_datetime("2015-01-01T25:00Z").has_value());
}

TEST(Datetime, FormatParseRoundTrip) {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const EpochSeconds t = static_cast<EpochSeconds>(rng.below(4102444800ull));  // up to 2100
        EXPECT_EQ(parse_iso_datetime(format_iso(t)), t);
    }
}
