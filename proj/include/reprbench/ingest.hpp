#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "reprbench/errors.hpp"
#include "reprbench/timeseries.hpp"

namespace reprbench {

// Loading window and scaling for CSV files in the Open Power System Data layout:
// UTF-8, comma separated, header row, timestamps in a `utc_timestamp` column.
struct IngestConfig {
    std::string column_name = "DE_load_actual_entsoe_transparency";
    std::string timestamp_column = "utc_timestamp";
    EpochSeconds start = epoch_from_civil(2014, 1, 1);
    EpochSeconds end = epoch_from_civil(2019, 12, 31, 23);
    int max_gap_fill_hours = 3;
    double unit_scale = 0.001;  // raw MW -> GW
};

namespace detail {

// Splits one CSV line; handles double-quoted fields with "" escapes.
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* endp = nullptr;
    out = std::strtod(s.c_str(), &endp);
    return endp != nullptr && *endp == '\0' && std::isfinite(out);
}

}  // namespace detail

// Reads the demand column restricted to [cfg.start, cfg.end] (inclusive) and
// scales raw values by cfg.unit_scale. Rows with an empty or non-numeric demand
// cell are dropped and show up as gaps for validate_hourly() to handle.
inline TimeSeries load_demand_csv(const std::string& path, const IngestConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open data file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw EmptyRange("data file has no header row: " + path);

    const auto header = detail::split_csv_line(line);
    std::ptrdiff_t ts_col = -1, val_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == cfg.timestamp_column) ts_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == cfg.column_name) val_col = static_cast<std::ptrdiff_t>(i);
    }
    if (ts_col < 0)
        throw MissingColumn("timestamp column '" + cfg.timestamp_column + "' not found in " + path);
    if (val_col < 0)
        throw MissingColumn("demand column '" + cfg.column_name + "' not found in " + path);

    TimeSeries ts;
    ts.name = cfg.column_name;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_line(line);
        if (static_cast<std::size_t>(ts_col) >= fields.size() ||
            static_cast<std::size_t>(val_col) >= fields.size())
            throw UnparsableTimestamp("row " + std::to_string(line_no) + ": too few columns");

        const auto stamp = parse_iso_datetime(fields[static_cast<std::size_t>(ts_col)]);
        if (!stamp)
            throw UnparsableTimestamp("row " + std::to_string(line_no) + ": bad timestamp '" +
                                      fields[static_cast<std::size_t>(ts_col)] + "'");
        if (*stamp < cfg.start || *stamp > cfg.end) continue;

        double raw;
        if (!detail::parse_double(fields[static_cast<std::size_t>(val_col)], raw)) continue;

        if (!ts.timestamps.empty() && *stamp <= ts.timestamps.back())
            throw UnparsableTimestamp("row " + std::to_string(line_no) +
                                      ": timestamps not strictly increasing");
        ts.timestamps.push_back(*stamp);
        ts.values.push_back(raw * cfg.unit_scale);
    }

    if (ts.empty())
        throw EmptyRange("no rows of '" + cfg.column_name + "' inside [" + format_iso(cfg.start) +
                         ", " + format_iso(cfg.end) + "]");
    return ts;
}

// Fills gaps of at most max_gap_fill_hours consecutive missing hours by linear
// interpolation between the flanking observations. Longer gaps are an error.
// Idempotent; filled values stay within the flanking value range.
inline TimeSeries validate_hourly(const TimeSeries& ts, int max_gap_fill_hours) {
    if (ts.empty()) throw EmptyRange("validate_hourly: empty series");

    TimeSeries out;
    out.name = ts.name;
    out.timestamps.reserve(ts.size());
    out.values.reserve(ts.size());
    out.timestamps.push_back(ts.timestamps[0]);
    out.values.push_back(ts.values[0]);

    for (std::size_t i = 1; i < ts.size(); ++i) {
        const std::int64_t delta = ts.timestamps[i] - ts.timestamps[i - 1];
        if (delta <= 0)
            throw UnparsableTimestamp("validate_hourly: timestamps not strictly increasing at " +
                                      format_iso(ts.timestamps[i]));
        if (delta % kSecondsPerHour != 0)
            throw UnparsableTimestamp("validate_hourly: timestamp off the hourly grid at " +
                                      format_iso(ts.timestamps[i]));
        const std::int64_t missing = delta / kSecondsPerHour - 1;
        if (missing > max_gap_fill_hours)
            throw GapTooLarge("gap of " + std::to_string(missing) + " hours starting at " +
                              format_iso(ts.timestamps[i - 1] + kSecondsPerHour) +
                              " exceeds fill limit of " + std::to_string(max_gap_fill_hours));
        const double lo = ts.values[i - 1];
        const double hi = ts.values[i];
        for (std::int64_t j = 1; j <= missing; ++j) {
            const double frac = static_cast<double>(j) / static_cast<double>(missing + 1);
            out.timestamps.push_back(ts.timestamps[i - 1] + j * kSecondsPerHour);
            out.values.push_back(lo + frac * (hi - lo));
        }
        out.timestamps.push_back(ts.timestamps[i]);
        out.values.push_back(ts.values[i]);
    }
    return out;
}

}  // namespace reprbench
