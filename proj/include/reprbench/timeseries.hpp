#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reprbench/datetime.hpp"

namespace reprbench {

// Hourly demand series in GW. After validate_hourly() the timestamps are a
// contiguous hourly grid, which makes index arithmetic on it exact.
struct TimeSeries {
    std::vector<EpochSeconds> timestamps;
    std::vector<double> values;
    std::string name;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }

    EpochSeconds start() const { return timestamps.front(); }
    EpochSeconds end() const { return timestamps.back(); }

    // Index of t assuming a contiguous hourly grid; nullopt when off the grid.
    std::optional<std::size_t> index_of(EpochSeconds t) const {
        if (empty() || t < timestamps.front() || t > timestamps.back()) return std::nullopt;
        const std::int64_t delta = t - timestamps.front();
        if (delta % kSecondsPerHour != 0) return std::nullopt;
        return static_cast<std::size_t>(delta / kSecondsPerHour);
    }

    bool is_contiguous_hourly() const {
        for (std::size_t i = 1; i < timestamps.size(); ++i)
            if (timestamps[i] - timestamps[i - 1] != kSecondsPerHour) return false;
        return true;
    }
};

}  // namespace reprbench
