#pragma once

#include "reprbench/calendar.hpp"
#include "reprbench/datetime.hpp"
#include "reprbench/transforms.hpp"

namespace reprbench {

// One supervised example. The representation input covers the history up to
// the forecast origin k; the calendar features belong to the target time k+h.
struct Sample {
    ReprInput repr;
    CalendarVector calendar;
    double target_absolute = 0.0;  // x_{k+h} in GW
    double x_k = 0.0;              // demand at the origin, needed to undo differencing
    int horizon = 0;
    EpochSeconds origin_timestamp = 0;

    // h-lag difference target. Exact as long as x_{k+h} and x_k are within a
    // factor of two of each other (Sterbenz), which holds for demand data.
    double target_delta() const { return target_absolute - x_k; }

    // Training target in the model's own scale: delta for difference kinds,
    // absolute demand otherwise.
    double model_target() const {
        return is_difference_kind(repr.kind) ? target_delta() : target_absolute;
    }

    EpochSeconds target_timestamp() const {
        return origin_timestamp + static_cast<EpochSeconds>(horizon) * kSecondsPerHour;
    }
};

}  // namespace reprbench
