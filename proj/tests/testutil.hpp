#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "reprbench/calendar.hpp"
#include "reprbench/datetime.hpp"
#include "reprbench/rng.hpp"
#include "reprbench/timeseries.hpp"

namespace testutil {

inline reprbench::TimeSeries make_hourly_series(reprbench::EpochSeconds start,
                                                std::vector<double> values) {
    reprbench::TimeSeries ts;
    ts.name = "test";
    ts.values = std::move(values);
    ts.timestamps.resize(ts.values.size());
    for (std::size_t i = 0; i < ts.values.size(); ++i)
        ts.timestamps[i] = start + static_cast<reprbench::EpochSeconds>(i) *
                                       reprbench::kSecondsPerHour;
    return ts;
}

inline reprbench::TimeSeries constant_series(reprbench::EpochSeconds start, std::size_t n,
                                             double value) {
    return make_hourly_series(start, std::vector<double>(n, value));
}

// Values drawn uniformly from [40, 79] GW: any pair is within a factor of two,
// so floating-point differences of any two values are exact (Sterbenz).
inline reprbench::TimeSeries random_series(reprbench::EpochSeconds start, std::size_t n,
                                           std::uint64_t seed) {
    reprbench::Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(40.0, 79.0);
    return make_hourly_series(start, std::move(v));
}

// Demand-shaped synthetic series: daily/weekly/seasonal structure plus AR noise.
inline reprbench::TimeSeries demand_like_series(reprbench::EpochSeconds start, std::size_t n,
                                                std::uint64_t seed) {
    constexpr double kTwoPi = 6.283185307179586;
    reprbench::Rng rng(seed);
    std::vector<double> v(n);
    double ar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const reprbench::EpochSeconds t = start + static_cast<reprbench::EpochSeconds>(i) *
                                                      reprbench::kSecondsPerHour;
        const reprbench::EpochSeconds local = t + reprbench::kSecondsPerHour;
        const reprbench::CivilTime ct = reprbench::civil_from_epoch(local);
        const int dow = reprbench::day_of_week_monday0(local);
        const int doy = reprbench::day_of_year(ct.date);
        double x = 57.0;
        x += 8.0 * std::sin(kTwoPi * (ct.hour - 5.0) / 24.0);
        x += (dow >= 5) ? -6.0 : 0.0;
        x += 5.0 * std::cos(kTwoPi * doy / 365.25);
        ar = 0.9 * ar + rng.uniform(-0.5, 0.5);
        v[i] = x + ar;
    }
    return make_hourly_series(start, std::move(v));
}

// OPSD-style CSV (utc_timestamp + one demand column, raw values in MW).
inline void write_opsd_csv(const std::string& path, const reprbench::TimeSeries& ts,
                           const std::string& column = "DE_load_actual_entsoe_transparency") {
    std::ofstream out(path);
    out << "utc_timestamp," << column << "\n";
    char buf[48];
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f", ts.values[i] * 1000.0);
        out << reprbench::format_iso(ts.timestamps[i]) << ',' << buf << "\n";
    }
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        base_ = std::filesystem::temp_directory_path() /
                ("reprbench_" + tag + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(base_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(base_, ec);
    }
    std::filesystem::path path(const std::string& name = "") const {
        return name.empty() ? base_ : base_ / name;
    }

private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path base_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

}  // namespace testutil
