// Command-line entry point: `run` executes the benchmark grid and writes CSV +
// markdown reports, `inspect` prints a single representation, `report`
// re-renders result CSVs to markdown.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reprbench/reprbench.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    return out;
}

// "1,24,168" or ranges like "1-10" / "1..10"
std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    for (const std::string& tok : split_commas(s)) {
        if (tok.empty()) continue;
        const auto dots = tok.find("..");
        const auto dash = tok.find('-', 1);
        std::size_t sep = std::string::npos, sep_len = 0;
        if (dots != std::string::npos) {
            sep = dots;
            sep_len = 2;
        } else if (dash != std::string::npos) {
            sep = dash;
            sep_len = 1;
        }
        if (sep != std::string::npos) {
            const long long lo = std::stoll(tok.substr(0, sep));
            const long long hi = std::stoll(tok.substr(sep + sep_len));
            for (long long v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(std::stoll(tok));
        }
    }
    return out;
}

std::vector<reprbench::ReprKind> parse_reprs(const std::string& s) {
    std::vector<reprbench::ReprKind> out;
    for (const std::string& tok : split_commas(s)) {
        if (tok == "all") {
            return {reprbench::ReprKind::Naive, reprbench::ReprKind::NaiveDifferences,
                    reprbench::ReprKind::Reshaped, reprbench::ReprKind::ReshapedDifferences};
        }
        out.push_back(reprbench::repr_from_name(tok));
    }
    if (out.empty()) throw reprbench::Error("no representations given");
    return out;
}

reprbench::EpochSeconds parse_stamp(const std::string& s) {
    const auto t = reprbench::parse_iso_datetime(s);
    if (!t) throw reprbench::Error("cannot parse timestamp '" + s + "'");
    return *t;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw reprbench::Error("cannot write " + path.string());
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw reprbench::Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string data_path;
    std::string holidays_path = "data/holidays_de.txt";
    std::string out_dir = "out";
    std::string reprs = "all";
    std::string horizons = "1,24,168";
    std::string seeds = "1..10";
    std::string column = "DE_load_actual_entsoe_transparency";
    std::string start = "1970-01-01T00:00Z";
    std::string end = "2100-01-01T00:00Z";
    std::string config_path;
    int jobs = 1;
    int tz_offset_hours = 1;
    int max_gap_hours = 3;
    bool save_models = false;
    std::string fcn_hidden;   // "hidden,latent,head"
    std::string cnn_filters;  // "filters1,filters2"
    double lr = 1e-3;
    int epochs = 200;
    int batch_size = 64;
    int patience = 10;
};

// Values from an optional JSON config file; explicitly passed flags win.
void merge_config(const CLI::App& cmd, Options& opt) {
    if (opt.config_path.empty()) return;
    json cfg = json::parse(read_file(opt.config_path));
    auto take_str = [&](const char* flag, const char* key, std::string& dst) {
        if (cmd.count(flag) == 0 && cfg.contains(key)) dst = cfg[key].get<std::string>();
    };
    auto take_int = [&](const char* flag, const char* key, int& dst) {
        if (cmd.count(flag) == 0 && cfg.contains(key)) dst = cfg[key].get<int>();
    };
    take_str("--data", "data", opt.data_path);
    take_str("--holidays", "holidays", opt.holidays_path);
    take_str("--out", "out", opt.out_dir);
    take_str("--repr", "repr", opt.reprs);
    take_str("--horizons", "horizons", opt.horizons);
    take_str("--seeds", "seeds", opt.seeds);
    take_str("--column", "column", opt.column);
    take_str("--start", "start", opt.start);
    take_str("--end", "end", opt.end);
    take_str("--fcn-hidden", "fcn_hidden", opt.fcn_hidden);
    take_str("--cnn-filters", "cnn_filters", opt.cnn_filters);
    take_int("--jobs", "jobs", opt.jobs);
    take_int("--tz-offset-hours", "tz_offset_hours", opt.tz_offset_hours);
    take_int("--max-gap-hours", "max_gap_hours", opt.max_gap_hours);
    take_int("--epochs", "epochs", opt.epochs);
    take_int("--batch-size", "batch_size", opt.batch_size);
    take_int("--patience", "patience", opt.patience);
    if (cmd.count("--lr") == 0 && cfg.contains("lr")) opt.lr = cfg["lr"].get<double>();
    if (cmd.count("--save-models") == 0 && cfg.contains("save_models"))
        opt.save_models = cfg["save_models"].get<bool>();
}

reprbench::TimeSeries load_series(const Options& opt) {
    reprbench::IngestConfig icfg;
    icfg.column_name = opt.column;
    icfg.start = parse_stamp(opt.start);
    icfg.end = parse_stamp(opt.end);
    icfg.max_gap_fill_hours = opt.max_gap_hours;
    const reprbench::TimeSeries raw = reprbench::load_demand_csv(opt.data_path, icfg);
    return reprbench::validate_hourly(raw, icfg.max_gap_fill_hours);
}

reprbench::ExperimentConfig experiment_config(const Options& opt) {
    reprbench::ExperimentConfig cfg;
    cfg.representations = parse_reprs(opt.reprs);
    cfg.horizons.clear();
    for (long long h : parse_int_list(opt.horizons)) cfg.horizons.push_back(static_cast<int>(h));
    cfg.seeds.clear();
    for (long long s : parse_int_list(opt.seeds))
        cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    if (cfg.horizons.empty() || cfg.seeds.empty())
        throw reprbench::Error("horizons and seeds must be non-empty");
    cfg.tz_offset_hours = opt.tz_offset_hours;
    cfg.jobs = opt.jobs;
    cfg.training.lr = opt.lr;
    cfg.training.max_epochs = opt.epochs;
    cfg.training.batch_size = opt.batch_size;
    cfg.training.patience = opt.patience;
    if (!opt.fcn_hidden.empty()) {
        const auto v = parse_int_list(opt.fcn_hidden);
        if (v.size() != 3) throw reprbench::Error("--fcn-hidden expects hidden,latent,head");
        cfg.fcn.hidden = static_cast<int>(v[0]);
        cfg.fcn.latent = static_cast<int>(v[1]);
        cfg.fcn.head_hidden = static_cast<int>(v[2]);
    }
    if (!opt.cnn_filters.empty()) {
        const auto v = parse_int_list(opt.cnn_filters);
        if (v.size() != 2) throw reprbench::Error("--cnn-filters expects filters1,filters2");
        cfg.cnn.filters1 = static_cast<int>(v[0]);
        cfg.cnn.filters2 = static_cast<int>(v[1]);
    }
    return cfg;
}

reprbench::HolidayCalendar load_holiday_set(const std::string& path) {
    if (path == "none") return {};
    return reprbench::load_holidays(path);
}

int cmd_run(const Options& opt) {
    if (opt.data_path.empty()) throw reprbench::Error("run requires --data");
    const reprbench::TimeSeries ts = load_series(opt);
    const reprbench::HolidayCalendar holidays = load_holiday_set(opt.holidays_path);
    const reprbench::ExperimentConfig cfg = experiment_config(opt);

    fs::create_directories(opt.out_dir);
    reprbench::ModelSink sink;
    if (opt.save_models) {
        fs::create_directories(fs::path(opt.out_dir) / "models");
        sink = [&](const reprbench::TrainedModel& m) {
            const std::string name = std::string(reprbench::repr_name(m.spec.repr)) + "_h" +
                                     std::to_string(m.spec.horizon) + "_s" +
                                     std::to_string(m.seed) + ".model";
            reprbench::save_model((fs::path(opt.out_dir) / "models" / name).string(), m);
        };
    }

    const reprbench::ExperimentReport report = reprbench::run_experiment(cfg, ts, holidays, sink);

    write_file(fs::path(opt.out_dir) / "runs.csv", reprbench::render_runs_csv(report));
    write_file(fs::path(opt.out_dir) / "aggregate.csv", reprbench::render_aggregate_csv(report));
    write_file(fs::path(opt.out_dir) / "baselines.csv", reprbench::render_baselines_csv(report));
    write_file(fs::path(opt.out_dir) / "report.md", reprbench::render_markdown(report));
    std::cout << "wrote " << opt.out_dir << "/{runs,aggregate,baselines}.csv and report.md\n";
    return 0;
}

int cmd_inspect(const Options& opt, const std::string& origin, const std::string& repr,
                int horizon) {
    if (opt.data_path.empty()) throw reprbench::Error("inspect requires --data");
    const reprbench::TimeSeries ts = load_series(opt);
    const reprbench::ReprKind kind = reprbench::repr_from_name(repr);
    const auto idx = ts.index_of(parse_stamp(origin));
    if (!idx) throw reprbench::InsufficientHistory("origin " + origin + " is not in the series");
    const reprbench::ReprInput in = reprbench::build_representation(ts, *idx, kind, horizon);

    char buf[48];
    const std::size_t cols = in.cols();
    for (std::size_t r = 0; r < in.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::snprintf(buf, sizeof(buf), "%.10g", in.flat[r * cols + c]);
            std::cout << (c ? "," : "") << buf;
        }
        std::cout << '\n';
    }
    return 0;
}

int cmd_report(const std::string& aggregate_path, const std::string& runs_path,
               const std::string& baselines_path, const std::string& out_path) {
    reprbench::ExperimentReport report;
    report.aggregate = reprbench::parse_aggregate_csv(read_file(aggregate_path));
    if (!baselines_path.empty()) {
        std::istringstream in(read_file(baselines_path));
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto f = reprbench::detail::split_csv_line(line);
            if (f.size() != 3) throw reprbench::Error("bad baselines row: " + line);
            report.baselines.push_back(
                {std::stoi(f[0]), std::stod(f[1]), std::stod(f[2])});
        }
    }
    (void)runs_path;  // per-run detail is not part of the rendered tables
    const std::string md = reprbench::render_markdown(report);
    if (out_path.empty())
        std::cout << md;
    else
        write_file(out_path, md);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark of time-series input representations for hourly demand forecasting"};
    app.require_subcommand(1);

    Options opt;
    std::string origin, inspect_repr = "naive";
    int inspect_horizon = 1;
    std::string aggregate_path, runs_path, baselines_path, report_out;

    auto add_data_flags = [&](CLI::App* cmd) {
        cmd->add_option("--data", opt.data_path, "CSV file with hourly demand");
        cmd->add_option("--column", opt.column, "demand column name");
        cmd->add_option("--start", opt.start, "ingestion window start (ISO, UTC)");
        cmd->add_option("--end", opt.end, "ingestion window end (ISO, UTC)");
        cmd->add_option("--max-gap-hours", opt.max_gap_hours,
                        "longest gap filled by interpolation");
    };

    CLI::App* run = app.add_subcommand("run", "train the grid and write reports");
    add_data_flags(run);
    run->add_option("--holidays", opt.holidays_path, "holiday date file, or 'none'");
    run->add_option("--out", opt.out_dir, "output directory");
    run->add_option("--repr", opt.reprs, "comma list of representations, or 'all'");
    run->add_option("--horizons", opt.horizons, "comma list of forecast horizons in hours");
    run->add_option("--seeds", opt.seeds, "comma list or range (e.g. 1..10)");
    run->add_option("--jobs", opt.jobs, "parallel training jobs");
    run->add_option("--tz-offset-hours", opt.tz_offset_hours, "local-time offset from UTC");
    run->add_option("--lr", opt.lr, "learning rate");
    run->add_option("--epochs", opt.epochs, "maximum training epochs");
    run->add_option("--batch-size", opt.batch_size, "mini-batch size");
    run->add_option("--patience", opt.patience, "early-stopping patience in epochs");
    run->add_option("--fcn-hidden", opt.fcn_hidden, "FCN sizes: hidden,latent,head");
    run->add_option("--cnn-filters", opt.cnn_filters, "CNN filter counts: conv1,conv2");
    run->add_flag("--save-models", opt.save_models, "write model checkpoints to <out>/models");
    run->add_option("--config", opt.config_path, "JSON config file (flags take precedence)");

    CLI::App* inspect = app.add_subcommand("inspect", "print one representation as CSV");
    add_data_flags(inspect);
    inspect->add_option("--origin", origin, "forecast origin timestamp (ISO, UTC)")->required();
    inspect->add_option("--repr", inspect_repr, "representation name");
    inspect->add_option("--horizon", inspect_horizon, "difference lag in hours");

    CLI::App* report = app.add_subcommand("report", "re-render result CSVs as markdown");
    report->add_option("--aggregate", aggregate_path, "aggregate.csv path")->required();
    report->add_option("--runs", runs_path, "runs.csv path");
    report->add_option("--baselines", baselines_path, "baselines.csv path");
    report->add_option("--out", report_out, "write markdown here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*run) {
            merge_config(*run, opt);
            return cmd_run(opt);
        }
        if (*inspect) return cmd_inspect(opt, origin, inspect_repr, inspect_horizon);
        if (*report) return cmd_report(aggregate_path, runs_path, baselines_path, report_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
