#pragma once

#include <stdexcept>
#include <string>

namespace reprbench {

// Base class for all library errors so callers can catch everything at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define REPRBENCH_DEFINE_ERROR(NAME) \
    struct NAME : Error {            \
        using Error::Error;          \
    };

// ingest
REPRBENCH_DEFINE_ERROR(MissingColumn)
REPRBENCH_DEFINE_ERROR(UnparsableTimestamp)
REPRBENCH_DEFINE_ERROR(EmptyRange)
REPRBENCH_DEFINE_ERROR(GapTooLarge)

// calendar
REPRBENCH_DEFINE_ERROR(UnparsableDate)

// transforms
REPRBENCH_DEFINE_ERROR(InsufficientHistory)
REPRBENCH_DEFINE_ERROR(ShapeMismatch)
REPRBENCH_DEFINE_ERROR(IndexOutOfBounds)
REPRBENCH_DEFINE_ERROR(EmptyInput)
REPRBENCH_DEFINE_ERROR(KernelTooLarge)
REPRBENCH_DEFINE_ERROR(InputTooShort)
REPRBENCH_DEFINE_ERROR(InvalidK)
REPRBENCH_DEFINE_ERROR(InvalidComponents)

// numerics
REPRBENCH_DEFINE_ERROR(NotScalarLoss)
REPRBENCH_DEFINE_ERROR(MissingGradient)

// models
REPRBENCH_DEFINE_ERROR(EmptyTrainingSet)
REPRBENCH_DEFINE_ERROR(NonFiniteLoss)
REPRBENCH_DEFINE_ERROR(ReprMismatch)
REPRBENCH_DEFINE_ERROR(BadCheckpoint)

// experiment
REPRBENCH_DEFINE_ERROR(LengthMismatch)
REPRBENCH_DEFINE_ERROR(DivisionByZero)

#undef REPRBENCH_DEFINE_ERROR

}  // namespace reprbench
