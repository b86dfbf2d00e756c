#pragma once

#include "reprbench/calendar.hpp"
#include "reprbench/datetime.hpp"
#include "reprbench/errors.hpp"
#include "reprbench/experiment.hpp"
#include "reprbench/ingest.hpp"
#include "reprbench/linalg.hpp"
#include "reprbench/models.hpp"
#include "reprbench/optimizer.hpp"
#include "reprbench/rng.hpp"
#include "reprbench/sample.hpp"
#include "reprbench/tensor.hpp"
#include "reprbench/timeseries.hpp"
#include "reprbench/transforms.hpp"
