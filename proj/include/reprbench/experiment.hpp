#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "reprbench/calendar.hpp"
#include "reprbench/errors.hpp"
#include "reprbench/ingest.hpp"
#include "reprbench/models.hpp"
#include "reprbench/sample.hpp"
#include "reprbench/timeseries.hpp"
#include "reprbench/transforms.hpp"

namespace reprbench {

enum class SplitId { Train, Val, Test, None };

struct ExperimentConfig {
    std::vector<ReprKind> representations = {ReprKind::Naive, ReprKind::NaiveDifferences,
                                             ReprKind::Reshaped, ReprKind::ReshapedDifferences};
    std::vector<int> horizons = {1, 24, 168};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> train_years = {2015, 2016, 2017};
    std::vector<int> val_years = {2018};
    std::vector<int> test_years = {2019};
    int tz_offset_hours = 1;
    FcnSpec fcn;
    CnnSpec cnn;
    TrainingConfig training;
    bool run_baselines = true;
    int jobs = 1;
};

// Split membership is decided by the calendar year of the timestamp in local
// convention (UTC + tz offset). History windows may cross split boundaries.
inline SplitId split_by_year(EpochSeconds t_utc, const ExperimentConfig& cfg) {
    const EpochSeconds local =
        t_utc + static_cast<EpochSeconds>(cfg.tz_offset_hours) * kSecondsPerHour;
    const int year = civil_from_epoch(local).date.year;
    for (int y : cfg.train_years)
        if (y == year) return SplitId::Train;
    for (int y : cfg.val_years)
        if (y == year) return SplitId::Val;
    for (int y : cfg.test_years)
        if (y == year) return SplitId::Test;
    return SplitId::None;
}

// One sample per hour whose target timestamp falls in the split. Targets whose
// history window would reach before the series start are skipped; the
// eligibility cut (origin index >= 168 + h - 1) is the difference-window
// requirement and is applied to every kind so that all four representations
// see the identical target set per (horizon, split).
inline std::vector<Sample> make_dataset(const TimeSeries& ts, ReprKind kind, int h, SplitId split,
                                        const ExperimentConfig& cfg,
                                        const HolidayCalendar& holidays) {
    if (h <= 0) throw Error("make_dataset: horizon must be positive");
    if (!ts.is_contiguous_hourly())
        throw Error("make_dataset: series must be validated to a contiguous hourly grid");

    const std::size_t lag = static_cast<std::size_t>(h);
    const std::size_t min_origin = static_cast<std::size_t>(kWindowHours) - 1 + lag;

    std::vector<Sample> out;
    for (std::size_t target = min_origin + lag; target < ts.size(); ++target) {
        if (split_by_year(ts.timestamps[target], cfg) != split) continue;
        const std::size_t origin = target - lag;
        Sample s;
        s.repr = build_representation(ts, origin, kind, h);
        s.calendar = encode_calendar(ts.timestamps[target], holidays, cfg.tz_offset_hours);
        s.target_absolute = ts.values[target];
        s.x_k = ts.values[origin];
        s.horizon = h;
        s.origin_timestamp = ts.timestamps[origin];
        out.push_back(std::move(s));
    }
    if (out.empty())
        throw InsufficientHistory("make_dataset: no sample with full history has its target in "
                                  "the requested split (horizon " + std::to_string(h) + ")");
    return out;
}

inline double mae(std::span<const double> truth, std::span<const double> pred) {
    if (truth.size() != pred.size())
        throw LengthMismatch("mae: " + std::to_string(truth.size()) + " vs " +
                             std::to_string(pred.size()) + " values");
    if (truth.empty()) throw EmptyInput("mae: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) acc += std::fabs(truth[i] - pred[i]);
    return acc / static_cast<double>(truth.size());
}

// MAE_compare / MAE_naive - 1, the paper-style percentage when multiplied by 100.
inline double relative_advantage(double mae_compare, double mae_naive) {
    if (!(mae_naive > 0.0)) throw DivisionByZero("relative_advantage: naive MAE must be > 0");
    return mae_compare / mae_naive - 1.0;
}

struct RunResult {
    ReprKind repr;
    int horizon;
    std::uint64_t seed;
    double test_mae;
};

struct AggregateRow {
    ReprKind repr;
    int horizon;
    double mean_mae;
    double std_mae;  // population std over seeds
    std::optional<double> rel_advantage;
};

struct BaselineResult {
    int horizon;
    double mae_naive_linear;  // Eq-5-style regression on raw history
    double mae_diff_linear;   // Eq-6-style regression on differenced history
};

struct ExperimentReport {
    std::vector<RunResult> runs;
    std::vector<AggregateRow> aggregate;
    std::vector<BaselineResult> baselines;
};

namespace detail {

// Runs tasks on `jobs` workers; rethrows the first captured exception.
inline void run_parallel(std::vector<std::function<void()>>& tasks, int jobs) {
    if (jobs <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                tasks[i]();
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline std::vector<double> targets_of(const std::vector<Sample>& samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(s.target_absolute);
    return out;
}

}  // namespace detail

// Optional sink invoked with every trained network (e.g. to write checkpoints).
// May be called from worker threads; cells are distinct.
using ModelSink = std::function<void(const TrainedModel&)>;

// The full grid: for each (representation, horizon) train one network per seed
// and evaluate on the test split; the linear baselines are fit once per
// horizon on the train+validation years. Deterministic for a fixed config,
// independent of the number of jobs.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg, const TimeSeries& ts,
                                       const HolidayCalendar& holidays,
                                       const ModelSink& on_model = {}) {
    if (cfg.seeds.empty()) throw Error("run_experiment: need at least one seed");
    ExperimentReport report;

    for (ReprKind kind : cfg.representations) {
        for (int h : cfg.horizons) {
            std::vector<Sample> train, val, test;
            try {
                train = make_dataset(ts, kind, h, SplitId::Train, cfg, holidays);
                val = make_dataset(ts, kind, h, SplitId::Val, cfg, holidays);
                test = make_dataset(ts, kind, h, SplitId::Test, cfg, holidays);
            } catch (const Error& e) {
                throw Error(std::string("repr=") + repr_name(kind) + " horizon=" +
                            std::to_string(h) + ": " + e.what());
            }

            std::vector<RunResult> cell(cfg.seeds.size());
            std::vector<std::function<void()>> tasks;
            for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
                tasks.push_back([&, si, kind, h] {
                    const std::uint64_t seed = cfg.seeds[si];
                    try {
                        ModelSpec spec;
                        spec.family = family_for(kind);
                        spec.repr = kind;
                        spec.horizon = h;
                        spec.fcn = cfg.fcn;
                        spec.cnn = cfg.cnn;
                        spec.training = cfg.training;
                        Rng rng(seed);
                        TrainedModel model = spec.family == ModelFamily::Cnn
                                                 ? build_cnn(spec, rng)
                                                 : build_fcn(spec, rng);
                        model = train_model(std::move(model), train, val, seed);
                        const std::vector<double> pred = predict_batch(model, test);
                        const std::vector<double> truth = detail::targets_of(test);
                        cell[si] = RunResult{kind, h, seed, mae(truth, pred)};
                        if (on_model) on_model(model);
                    } catch (const Error& e) {
                        throw Error(std::string("repr=") + repr_name(kind) + " horizon=" +
                                    std::to_string(h) + " seed=" + std::to_string(seed) + ": " +
                                    e.what());
                    }
                });
            }
            detail::run_parallel(tasks, cfg.jobs);
            report.runs.insert(report.runs.end(), cell.begin(), cell.end());
        }
    }

    // aggregate mean/std per (repr, horizon), then relative advantage vs naive
    for (ReprKind kind : cfg.representations) {
        for (int h : cfg.horizons) {
            double mean = 0.0;
            std::size_t n = 0;
            for (const RunResult& r : report.runs)
                if (r.repr == kind && r.horizon == h) {
                    mean += r.test_mae;
                    ++n;
                }
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (const RunResult& r : report.runs)
                if (r.repr == kind && r.horizon == h) {
                    const double d = r.test_mae - mean;
                    var += d * d;
                }
            AggregateRow row{kind, h, mean, std::sqrt(var / static_cast<double>(n)),
                             std::nullopt};
            report.aggregate.push_back(row);
        }
    }
    for (AggregateRow& row : report.aggregate) {
        for (const AggregateRow& naive : report.aggregate)
            if (naive.repr == ReprKind::Naive && naive.horizon == row.horizon) {
                row.rel_advantage = relative_advantage(row.mean_mae, naive.mean_mae);
                break;
            }
    }

    if (cfg.run_baselines) {
        for (int h : cfg.horizons) {
            auto build_split = [&](ReprKind kind, SplitId split) {
                return make_dataset(ts, kind, h, split, cfg, holidays);
            };
            try {
                BaselineResult b{h, 0.0, 0.0};
                for (const bool differenced : {false, true}) {
                    const ReprKind kind =
                        differenced ? ReprKind::NaiveDifferences : ReprKind::Naive;
                    std::vector<Sample> fit_set = build_split(kind, SplitId::Train);
                    const std::vector<Sample> val_set = build_split(kind, SplitId::Val);
                    fit_set.insert(fit_set.end(), val_set.begin(), val_set.end());
                    const LinearModel lm = fit_linear(fit_set, differenced);
                    const std::vector<Sample> test = build_split(kind, SplitId::Test);
                    std::vector<double> pred;
                    pred.reserve(test.size());
                    for (const Sample& s : test) pred.push_back(predict_linear(lm, s));
                    const double m = mae(detail::targets_of(test), pred);
                    (differenced ? b.mae_diff_linear : b.mae_naive_linear) = m;
                }
                report.baselines.push_back(b);
            } catch (const Error& e) {
                throw Error("baseline horizon=" + std::to_string(h) + ": " + e.what());
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

namespace detail {
inline std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}
inline std::string fmt_pct(double fraction) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%+.1f%%", fraction * 100.0);
    return buf;
}
}  // namespace detail

inline std::string render_runs_csv(const ExperimentReport& r) {
    std::string out = "representation,horizon_hours,seed,test_mae_gw\n";
    for (const RunResult& run : r.runs) {
        out += repr_name(run.repr);
        out += ',' + std::to_string(run.horizon) + ',' + std::to_string(run.seed) + ',' +
               detail::fmt6(run.test_mae) + '\n';
    }
    return out;
}

inline std::string render_aggregate_csv(const std::vector<AggregateRow>& rows) {
    std::string out = "representation,horizon_hours,mean_mae_gw,std_mae_gw,rel_advantage\n";
    for (const AggregateRow& a : rows) {
        out += repr_name(a.repr);
        out += ',' + std::to_string(a.horizon) + ',' + detail::fmt6(a.mean_mae) + ',' +
               detail::fmt6(a.std_mae) + ',';
        if (a.rel_advantage) out += detail::fmt6(*a.rel_advantage);
        out += '\n';
    }
    return out;
}

inline std::string render_aggregate_csv(const ExperimentReport& r) {
    return render_aggregate_csv(r.aggregate);
}

inline std::string render_baselines_csv(const ExperimentReport& r) {
    std::string out = "horizon_hours,naive_linear_mae_gw,diff_linear_mae_gw\n";
    for (const BaselineResult& b : r.baselines)
        out += std::to_string(b.horizon) + ',' + detail::fmt6(b.mae_naive_linear) + ',' +
               detail::fmt6(b.mae_diff_linear) + '\n';
    return out;
}

inline std::vector<AggregateRow> parse_aggregate_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("parse_aggregate_csv: empty input");
    std::vector<AggregateRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 5)
            throw Error("parse_aggregate_csv: line " + std::to_string(line_no) +
                        ": expected 5 fields");
        AggregateRow a{repr_from_name(fields[0]), std::stoi(fields[1]), std::stod(fields[2]),
                       std::stod(fields[3]), std::nullopt};
        if (!fields[4].empty()) a.rel_advantage = std::stod(fields[4]);
        rows.push_back(a);
    }
    return rows;
}

// One row per horizon, one column per representation, cells "mean (±std) [rel%]".
inline std::string render_markdown(const ExperimentReport& r) {
    static constexpr ReprKind kOrder[] = {ReprKind::Naive, ReprKind::NaiveDifferences,
                                          ReprKind::Reshaped, ReprKind::ReshapedDifferences};
    std::vector<int> horizons;
    for (const AggregateRow& a : r.aggregate)
        if (std::find(horizons.begin(), horizons.end(), a.horizon) == horizons.end())
            horizons.push_back(a.horizon);
    for (const BaselineResult& b : r.baselines)
        if (std::find(horizons.begin(), horizons.end(), b.horizon) == horizons.end())
            horizons.push_back(b.horizon);
    std::sort(horizons.begin(), horizons.end());

    std::string out = "# Forecasting results\n\nTest MAE in GW (mean over seeds; percentages "
                      "relative to the naive representation).\n\n";
    if (!r.aggregate.empty()) {
        out += "| Horizon (hours) | Naive | Naive Differences | Reshaped | Reshaped Differences "
               "|\n|---|---|---|---|---|\n";
        for (int h : horizons) {
            out += "| " + std::to_string(h) + " |";
            for (ReprKind kind : kOrder) {
                const AggregateRow* found = nullptr;
                for (const AggregateRow& a : r.aggregate)
                    if (a.repr == kind && a.horizon == h) found = &a;
                if (!found) {
                    out += " |";
                    continue;
                }
                out += ' ' + detail::fmt6(found->mean_mae) + " (\xC2\xB1" +
                       detail::fmt6(found->std_mae) + ")";
                if (found->rel_advantage) out += " [" + detail::fmt_pct(*found->rel_advantage) + "]";
                out += " |";
            }
            out += '\n';
        }
    }
    if (!r.baselines.empty()) {
        out += "\n## Linear baselines\n\n| Horizon (hours) | Regression on demand | Regression "
               "on demand differences |\n|---|---|---|\n";
        for (const BaselineResult& b : r.baselines)
            out += "| " + std::to_string(b.horizon) + " | " + detail::fmt6(b.mae_naive_linear) +
                   " | " + detail::fmt6(b.mae_diff_linear) + " |\n";
    }
    return out;
}

}  // namespace reprbench
