#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "reprbench/calendar.hpp"
#include "reprbench/errors.hpp"
#include "reprbench/linalg.hpp"
#include "reprbench/optimizer.hpp"
#include "reprbench/rng.hpp"
#include "reprbench/sample.hpp"
#include "reprbench/tensor.hpp"
#include "reprbench/transforms.hpp"

namespace reprbench {

enum class ModelFamily { Linear, Fcn, Cnn, Mlp10 };

inline const char* family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::Linear: return "linear";
        case ModelFamily::Fcn: return "fcn";
        case ModelFamily::Cnn: return "cnn";
        case ModelFamily::Mlp10: return "mlp10";
    }
    return "?";
}

inline ModelFamily family_from_name(const std::string& s) {
    if (s == "linear") return ModelFamily::Linear;
    if (s == "fcn") return ModelFamily::Fcn;
    if (s == "cnn") return ModelFamily::Cnn;
    if (s == "mlp10") return ModelFamily::Mlp10;
    throw Error("unknown model family '" + s + "'");
}

// Default family used for a representation in the benchmark grid.
inline ModelFamily family_for(ReprKind kind) {
    return is_matrix_kind(kind) ? ModelFamily::Cnn : ModelFamily::Fcn;
}

// History part: window -> hidden -> latent; head: latent + calendar -> hidden -> 1.
struct FcnSpec {
    int hidden = 128;
    int latent = 64;
    int head_hidden = 32;
};

// Two stacked convolutions, then three hidden dense layers on the flattened
// feature maps joined with the calendar vector.
struct CnnSpec {
    int filters1 = 16;
    int filters2 = 32;
    int kernel = 3;
    int head1 = 128;
    int head2 = 64;
    int head3 = 32;
};

struct TrainingConfig {
    double lr = 1e-3;
    int batch_size = 64;
    int max_epochs = 200;
    int patience = 10;
};

struct ModelSpec {
    ModelFamily family = ModelFamily::Fcn;
    ReprKind repr = ReprKind::Naive;
    int horizon = 1;
    FcnSpec fcn;
    CnnSpec cnn;
    TrainingConfig training;
};

// Per-feature input statistics plus target statistics, all from the training
// split. Constant features get std 1 so standardization stays invertible.
struct Normalization {
    std::vector<double> input_mean;
    std::vector<double> input_std;
    double target_mean = 0.0;
    double target_std = 1.0;
};

struct LinearModel {
    double intercept = 0.0;
    std::vector<double> history_weights;   // 168
    std::vector<double> calendar_weights;  // 8
    bool differenced = false;
    int horizon = 1;
};

struct TrainedModel {
    ModelSpec spec;
    std::vector<TensorPtr> params;  // empty for the linear family
    LinearModel linear;
    Normalization norm;
    std::uint64_t seed = 0;
    double best_val_mae = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr int kInputFeatures = kWindowHours + static_cast<int>(CalendarVector::kSize);

namespace detail {

inline void check_repr_compat(ModelFamily family, ReprKind kind) {
    const bool wants_matrix = family == ModelFamily::Cnn;
    if (wants_matrix != is_matrix_kind(kind))
        throw ReprMismatch(std::string("model family ") + family_name(family) +
                           " is incompatible with representation " + repr_name(kind));
}

inline TensorPtr he_uniform(Rng& rng, std::vector<int> shape, int fan_in) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    TensorPtr t = make_tensor(std::move(shape), 0.0, true);
    for (double& v : t->data) v = rng.uniform(-bound, bound);
    return t;
}

inline TensorPtr zeros_param(std::vector<int> shape) {
    return make_tensor(std::move(shape), 0.0, true);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Linear regression baselines
// ---------------------------------------------------------------------------

// Least squares over [1 | 168 history | 8 calendar] via normal equations with
// Tikhonov damping 1e-8 on every diagonal entry except the intercept.
// With differenced = true the targets are the h-lag differences.
inline LinearModel fit_linear(const std::vector<Sample>& samples, bool differenced) {
    if (samples.empty()) throw EmptyTrainingSet("fit_linear: no samples");
    constexpr std::size_t kCols = 1 + kWindowHours + CalendarVector::kSize;
    constexpr double kDamping = 1e-8;

    Mat ata(kCols, kCols);
    std::vector<double> aty(kCols, 0.0);
    std::vector<double> row(kCols);

    for (const Sample& s : samples) {
        if (is_difference_kind(s.repr.kind) != differenced || s.repr.is_matrix())
            throw ReprMismatch(std::string("fit_linear: sample representation ") +
                               repr_name(s.repr.kind) + " does not match differenced=" +
                               (differenced ? "true" : "false"));
        row[0] = 1.0;
        std::copy(s.repr.flat.begin(), s.repr.flat.end(), row.begin() + 1);
        const auto cal = s.calendar.to_array();
        std::copy(cal.begin(), cal.end(), row.begin() + 1 + kWindowHours);
        const double y = differenced ? s.target_delta() : s.target_absolute;

        for (std::size_t i = 0; i < kCols; ++i) {
            const double ri = row[i];
            if (ri == 0.0) continue;
            double* arow = ata.row(i);
            for (std::size_t j = i; j < kCols; ++j) arow[j] += ri * row[j];
            aty[i] += ri * y;
        }
    }
    for (std::size_t i = 0; i < kCols; ++i)
        for (std::size_t j = 0; j < i; ++j) ata.at(i, j) = ata.at(j, i);
    for (std::size_t i = 1; i < kCols; ++i) ata.at(i, i) += kDamping;

    const std::vector<double> w = cholesky_solve(std::move(ata), std::move(aty));

    LinearModel m;
    m.intercept = w[0];
    m.history_weights.assign(w.begin() + 1, w.begin() + 1 + kWindowHours);
    m.calendar_weights.assign(w.begin() + 1 + kWindowHours, w.end());
    m.differenced = differenced;
    m.horizon = samples.front().horizon;
    return m;
}

// Always returns an absolute demand in GW; difference fits add back x_k.
inline double predict_linear(const LinearModel& m, const Sample& s) {
    if (is_difference_kind(s.repr.kind) != m.differenced || s.repr.is_matrix())
        throw ReprMismatch("predict_linear: sample representation does not match the model");
    double y = m.intercept;
    y += dot(m.history_weights.data(), s.repr.flat.data(), m.history_weights.size());
    const auto cal = s.calendar.to_array();
    y += dot(m.calendar_weights.data(), cal.data(), cal.size());
    return m.differenced ? s.x_k + y : y;
}

// ---------------------------------------------------------------------------
// Network builders
// ---------------------------------------------------------------------------

inline TrainedModel build_fcn(const ModelSpec& spec, Rng& rng) {
    detail::check_repr_compat(ModelFamily::Fcn, spec.repr);
    TrainedModel m;
    m.spec = spec;
    m.spec.family = ModelFamily::Fcn;
    const FcnSpec& f = spec.fcn;
    const int joined = f.latent + static_cast<int>(CalendarVector::kSize);
    m.params = {
        detail::he_uniform(rng, {f.hidden, kWindowHours}, kWindowHours),
        detail::zeros_param({f.hidden}),
        detail::he_uniform(rng, {f.latent, f.hidden}, f.hidden),
        detail::zeros_param({f.latent}),
        detail::he_uniform(rng, {f.head_hidden, joined}, joined),
        detail::zeros_param({f.head_hidden}),
        detail::he_uniform(rng, {1, f.head_hidden}, f.head_hidden),
        detail::zeros_param({1}),
    };
    return m;
}

inline TrainedModel build_cnn(const ModelSpec& spec, Rng& rng) {
    detail::check_repr_compat(ModelFamily::Cnn, spec.repr);
    TrainedModel m;
    m.spec = spec;
    m.spec.family = ModelFamily::Cnn;
    const CnnSpec& c = spec.cnn;
    const int oh1 = kWindowDays - c.kernel + 1;
    const int ow1 = kHoursPerDay - c.kernel + 1;
    const int oh2 = oh1 - c.kernel + 1;
    const int ow2 = ow1 - c.kernel + 1;
    if (oh2 < 1 || ow2 < 1) throw KernelTooLarge("build_cnn: kernel too large for 7x24 input");
    const int flat = c.filters2 * oh2 * ow2;
    const int joined = flat + static_cast<int>(CalendarVector::kSize);
    m.params = {
        detail::he_uniform(rng, {c.filters1, 1, c.kernel, c.kernel}, c.kernel * c.kernel),
        detail::zeros_param({c.filters1}),
        detail::he_uniform(rng, {c.filters2, c.filters1, c.kernel, c.kernel},
                           c.filters1 * c.kernel * c.kernel),
        detail::zeros_param({c.filters2}),
        detail::he_uniform(rng, {c.head1, joined}, joined),
        detail::zeros_param({c.head1}),
        detail::he_uniform(rng, {c.head2, c.head1}, c.head1),
        detail::zeros_param({c.head2}),
        detail::he_uniform(rng, {c.head3, c.head2}, c.head2),
        detail::zeros_param({c.head3}),
        detail::he_uniform(rng, {1, c.head3}, c.head3),
        detail::zeros_param({1}),
    };
    return m;
}

inline TrainedModel build_mlp10(const ModelSpec& spec, Rng& rng) {
    detail::check_repr_compat(ModelFamily::Mlp10, spec.repr);
    TrainedModel m;
    m.spec = spec;
    m.spec.family = ModelFamily::Mlp10;
    constexpr int kHidden = 10;
    m.params = {
        detail::he_uniform(rng, {kHidden, kInputFeatures}, kInputFeatures),
        detail::zeros_param({kHidden}),
        detail::he_uniform(rng, {1, kHidden}, kHidden),
        detail::zeros_param({1}),
    };
    return m;
}

inline std::size_t count_parameters(const TrainedModel& m) {
    std::size_t n = 0;
    for (const TensorPtr& p : m.params) n += p->size();
    return n;
}

// Forward pass on standardized inputs: x_hist [B,168], x_cal [B,8] -> [B,1].
inline TensorPtr forward_network(const TrainedModel& m, Graph* g, const TensorPtr& x_hist,
                                 const TensorPtr& x_cal) {
    const std::vector<TensorPtr>& p = m.params;
    switch (m.spec.family) {
        case ModelFamily::Fcn: {
            TensorPtr h = relu(g, dense(g, x_hist, p[0], p[1]));
            TensorPtr latent = relu(g, dense(g, h, p[2], p[3]));
            TensorPtr joined = concat(g, latent, x_cal, 1);
            TensorPtr head = relu(g, dense(g, joined, p[4], p[5]));
            return dense(g, head, p[6], p[7]);
        }
        case ModelFamily::Mlp10: {
            TensorPtr joined = concat(g, x_hist, x_cal, 1);
            TensorPtr h = relu(g, dense(g, joined, p[0], p[1]));
            return dense(g, h, p[2], p[3]);
        }
        case ModelFamily::Cnn: {
            const int B = x_hist->dim(0);
            TensorPtr img = reshape_tensor(g, x_hist, {B, 1, kWindowDays, kHoursPerDay});
            TensorPtr c1 = relu(g, conv2d(g, img, p[0], p[1]));
            TensorPtr c2 = relu(g, conv2d(g, c1, p[2], p[3]));
            TensorPtr joined = concat(g, flatten_rows(g, c2), x_cal, 1);
            TensorPtr h1 = relu(g, dense(g, joined, p[4], p[5]));
            TensorPtr h2 = relu(g, dense(g, h1, p[6], p[7]));
            TensorPtr h3 = relu(g, dense(g, h2, p[8], p[9]));
            return dense(g, h3, p[10], p[11]);
        }
        case ModelFamily::Linear:
            throw Error("forward_network: linear models have no network forward pass");
    }
    throw Error("forward_network: unknown family");
}

// ---------------------------------------------------------------------------
// Standardization and batching helpers
// ---------------------------------------------------------------------------

namespace detail {

inline void fill_features(const Sample& s, double* out176) {
    std::copy(s.repr.flat.begin(), s.repr.flat.end(), out176);
    const auto cal = s.calendar.to_array();
    std::copy(cal.begin(), cal.end(), out176 + kWindowHours);
}

inline Normalization compute_normalization(const std::vector<Sample>& train) {
    const std::size_t n = train.size();
    Normalization norm;
    norm.input_mean.assign(kInputFeatures, 0.0);
    norm.input_std.assign(kInputFeatures, 0.0);
    std::vector<double> feats(kInputFeatures);
    for (const Sample& s : train) {
        fill_features(s, feats.data());
        for (int j = 0; j < kInputFeatures; ++j) norm.input_mean[j] += feats[j];
        norm.target_mean += s.model_target();
    }
    norm.target_mean /= static_cast<double>(n);
    for (double& m : norm.input_mean) m /= static_cast<double>(n);
    double tvar = 0.0;
    for (const Sample& s : train) {
        fill_features(s, feats.data());
        for (int j = 0; j < kInputFeatures; ++j) {
            const double d = feats[j] - norm.input_mean[j];
            norm.input_std[j] += d * d;
        }
        const double td = s.model_target() - norm.target_mean;
        tvar += td * td;
    }
    for (double& v : norm.input_std) {
        v = std::sqrt(v / static_cast<double>(n));
        if (v < 1e-12) v = 1.0;
    }
    norm.target_std = std::sqrt(tvar / static_cast<double>(n));
    if (norm.target_std < 1e-12) norm.target_std = 1.0;
    return norm;
}

// Standardized feature rows for a set of samples, split into history/calendar.
struct FeatureBlock {
    std::vector<double> hist;  // n x 168
    std::vector<double> cal;   // n x 8
    std::vector<double> target_std;  // model-scale targets, standardized
};

inline FeatureBlock standardize(const std::vector<Sample>& samples, const Normalization& norm) {
    constexpr int kCal = static_cast<int>(CalendarVector::kSize);
    FeatureBlock fb;
    fb.hist.resize(samples.size() * kWindowHours);
    fb.cal.resize(samples.size() * kCal);
    fb.target_std.resize(samples.size());
    std::vector<double> feats(kInputFeatures);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        fill_features(samples[i], feats.data());
        for (int j = 0; j < kInputFeatures; ++j)
            feats[j] = (feats[j] - norm.input_mean[j]) / norm.input_std[j];
        std::copy(feats.begin(), feats.begin() + kWindowHours,
                  fb.hist.begin() + i * kWindowHours);
        std::copy(feats.begin() + kWindowHours, feats.end(), fb.cal.begin() + i * kCal);
        fb.target_std[i] = (samples[i].model_target() - norm.target_mean) / norm.target_std;
    }
    return fb;
}

inline TensorPtr gather_rows(const std::vector<double>& flat, int width,
                             std::span<const std::size_t> idx) {
    TensorPtr t = make_tensor({static_cast<int>(idx.size()), width});
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy(flat.begin() + idx[i] * width, flat.begin() + (idx[i] + 1) * width,
                  t->data.begin() + i * width);
    return t;
}

}  // namespace detail

// De-standardized forecasts in GW for a batch of samples.
inline std::vector<double> predict_batch(const TrainedModel& m, std::span<const Sample> samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    if (m.spec.family == ModelFamily::Linear) {
        for (const Sample& s : samples) out.push_back(predict_linear(m.linear, s));
        return out;
    }
    constexpr int kCal = static_cast<int>(CalendarVector::kSize);
    constexpr std::size_t kChunk = 512;
    std::vector<double> feats(kInputFeatures);
    for (std::size_t base = 0; base < samples.size(); base += kChunk) {
        const std::size_t nb = std::min(kChunk, samples.size() - base);
        TensorPtr x_hist = make_tensor({static_cast<int>(nb), kWindowHours});
        TensorPtr x_cal = make_tensor({static_cast<int>(nb), kCal});
        for (std::size_t i = 0; i < nb; ++i) {
            const Sample& s = samples[base + i];
            if (is_matrix_kind(s.repr.kind) != (m.spec.family == ModelFamily::Cnn))
                throw ReprMismatch("predict: sample representation does not match the model");
            detail::fill_features(s, feats.data());
            for (int j = 0; j < kInputFeatures; ++j)
                feats[j] = (feats[j] - m.norm.input_mean[j]) / m.norm.input_std[j];
            std::copy(feats.begin(), feats.begin() + kWindowHours,
                      x_hist->data.begin() + i * kWindowHours);
            std::copy(feats.begin() + kWindowHours, feats.end(), x_cal->data.begin() + i * kCal);
        }
        TensorPtr pred = forward_network(m, nullptr, x_hist, x_cal);
        for (std::size_t i = 0; i < nb; ++i) {
            double y = pred->data[i] * m.norm.target_std + m.norm.target_mean;
            if (is_difference_kind(samples[base + i].repr.kind)) y += samples[base + i].x_k;
            out.push_back(y);
        }
    }
    return out;
}

inline double predict(const TrainedModel& m, const Sample& s) {
    return predict_batch(m, std::span<const Sample>(&s, 1)).front();
}

namespace detail {
inline double validation_mae_gw(const TrainedModel& m, const std::vector<Sample>& val) {
    const std::vector<double> pred = predict_batch(m, val);
    double acc = 0.0;
    for (std::size_t i = 0; i < val.size(); ++i)
        acc += std::fabs(val[i].target_absolute - pred[i]);
    return acc / static_cast<double>(val.size());
}
}  // namespace detail

// Mini-batch L1/Adam training with per-epoch seeded shuffles. Inputs and
// targets are standardized with training-split statistics; model selection is
// by validation MAE in GW with early stopping.
inline TrainedModel train_model(TrainedModel model, const std::vector<Sample>& train,
                                const std::vector<Sample>& val, std::uint64_t seed) {
    if (model.spec.family == ModelFamily::Linear)
        throw Error("train_model: linear models are fit in closed form by fit_linear");
    if (train.empty() || val.empty())
        throw EmptyTrainingSet("train_model: empty training or validation split");
    for (const Sample* s : {&train.front(), &val.front()})
        if (is_matrix_kind(s->repr.kind) != (model.spec.family == ModelFamily::Cnn))
            throw ReprMismatch("train_model: representation does not match the model family");

    model.seed = seed;
    model.norm = detail::compute_normalization(train);
    const detail::FeatureBlock fb = detail::standardize(train, model.norm);
    constexpr int kCal = static_cast<int>(CalendarVector::kSize);

    const TrainingConfig& tc = model.spec.training;
    AdamState adam;
    adam.lr = tc.lr;

    Rng shuffle_rng(seed ^ 0x5851f42d4c957f2dull);
    std::vector<std::size_t> order(train.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    double best_mae = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best_params;
    int epochs_since_best = 0;

    for (int epoch = 1; epoch <= tc.max_epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        const std::size_t bs = static_cast<std::size_t>(tc.batch_size);
        for (std::size_t start = 0; start < order.size(); start += bs) {
            const std::size_t nb = std::min(bs, order.size() - start);
            const std::span<const std::size_t> idx(order.data() + start, nb);
            TensorPtr x_hist = detail::gather_rows(fb.hist, kWindowHours, idx);
            TensorPtr x_cal = detail::gather_rows(fb.cal, kCal, idx);
            std::vector<double> targets(nb);
            for (std::size_t i = 0; i < nb; ++i) targets[i] = fb.target_std[idx[i]];

            Graph graph;
            TensorPtr pred = forward_network(model, &graph, x_hist, x_cal);
            TensorPtr loss = l1_loss(&graph, pred, targets);
            if (!std::isfinite(loss->data[0]))
                throw NonFiniteLoss("train_model: non-finite loss in epoch " +
                                    std::to_string(epoch));
            graph.backward(loss);
            adam_step(model.params, adam);
        }

        const double val_mae = detail::validation_mae_gw(model, val);
        if (val_mae < best_mae) {
            best_mae = val_mae;
            best_params.clear();
            for (const TensorPtr& p : model.params) best_params.push_back(p->data);
            epochs_since_best = 0;
        } else if (++epochs_since_best >= tc.patience) {
            break;
        }
    }

    for (std::size_t i = 0; i < model.params.size(); ++i) model.params[i]->data = best_params[i];
    model.best_val_mae = best_mae;
    return model;
}

// ---------------------------------------------------------------------------
// Checkpoints: versioned textual dump of spec + parameters + normalization
// ---------------------------------------------------------------------------

inline constexpr const char* kCheckpointHeader = "REPRBENCH-MODEL v1";

namespace detail {

inline void write_doubles(std::ostream& os, std::span<const double> values) {
    char buf[48];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), " %.17g", v);
        os << buf;
    }
}

struct TokenReader {
    std::vector<std::string> tokens;
    std::size_t pos = 0;

    explicit TokenReader(std::istream& in) {
        std::string t;
        while (in >> t) tokens.push_back(t);
    }
    const std::string& next() {
        if (pos >= tokens.size()) throw BadCheckpoint("unexpected end of checkpoint");
        return tokens[pos++];
    }
    double next_double() {
        const std::string& t = next();
        char* endp = nullptr;
        const double v = std::strtod(t.c_str(), &endp);
        if (endp == t.c_str()) throw BadCheckpoint("bad number '" + t + "' in checkpoint");
        return v;
    }
    long next_long() { return static_cast<long>(next_double()); }
    void expect(const char* word) {
        if (next() != word) throw BadCheckpoint(std::string("expected '") + word + "'");
    }
};

}  // namespace detail

inline void save_model(std::ostream& os, const TrainedModel& m) {
    os << kCheckpointHeader << "\n";
    os << "family " << family_name(m.spec.family) << "\n";
    os << "repr " << repr_name(m.spec.repr) << "\n";
    os << "horizon " << m.spec.horizon << "\n";
    os << "seed " << m.seed << "\n";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", m.best_val_mae);
    os << "best_val_mae " << buf << "\n";
    os << "training " << m.spec.training.lr << " " << m.spec.training.batch_size << " "
       << m.spec.training.max_epochs << " " << m.spec.training.patience << "\n";
    os << "fcn " << m.spec.fcn.hidden << " " << m.spec.fcn.latent << " " << m.spec.fcn.head_hidden
       << "\n";
    os << "cnn " << m.spec.cnn.filters1 << " " << m.spec.cnn.filters2 << " " << m.spec.cnn.kernel
       << " " << m.spec.cnn.head1 << " " << m.spec.cnn.head2 << " " << m.spec.cnn.head3 << "\n";

    if (m.spec.family == ModelFamily::Linear) {
        os << "linear " << (m.linear.differenced ? 1 : 0) << " " << m.linear.horizon;
        detail::write_doubles(os, std::span<const double>(&m.linear.intercept, 1));
        detail::write_doubles(os, m.linear.history_weights);
        detail::write_doubles(os, m.linear.calendar_weights);
        os << "\n";
    } else {
        os << "norm " << m.norm.input_mean.size();
        detail::write_doubles(os, m.norm.input_mean);
        detail::write_doubles(os, m.norm.input_std);
        detail::write_doubles(
            os, std::array<double, 2>{m.norm.target_mean, m.norm.target_std});
        os << "\n";
        os << "params " << m.params.size() << "\n";
        for (const TensorPtr& p : m.params) {
            os << "tensor " << p->shape.size();
            for (int d : p->shape) os << " " << d;
            detail::write_doubles(os, p->data);
            os << "\n";
        }
    }
    os << "end\n";
}

inline void save_model(const std::string& path, const TrainedModel& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write checkpoint: " + path);
    save_model(out, m);
}

inline TrainedModel load_model(std::istream& is) {
    std::string header_word, header_ver;
    is >> header_word >> header_ver;
    if (header_word + " " + header_ver != kCheckpointHeader)
        throw BadCheckpoint("not a model checkpoint (bad header)");

    detail::TokenReader r(is);
    TrainedModel m;
    r.expect("family");
    m.spec.family = family_from_name(r.next());
    r.expect("repr");
    m.spec.repr = repr_from_name(r.next());
    r.expect("horizon");
    m.spec.horizon = static_cast<int>(r.next_long());
    r.expect("seed");
    m.seed = static_cast<std::uint64_t>(r.next_long());
    r.expect("best_val_mae");
    m.best_val_mae = r.next_double();
    r.expect("training");
    m.spec.training.lr = r.next_double();
    m.spec.training.batch_size = static_cast<int>(r.next_long());
    m.spec.training.max_epochs = static_cast<int>(r.next_long());
    m.spec.training.patience = static_cast<int>(r.next_long());
    r.expect("fcn");
    m.spec.fcn.hidden = static_cast<int>(r.next_long());
    m.spec.fcn.latent = static_cast<int>(r.next_long());
    m.spec.fcn.head_hidden = static_cast<int>(r.next_long());
    r.expect("cnn");
    m.spec.cnn.filters1 = static_cast<int>(r.next_long());
    m.spec.cnn.filters2 = static_cast<int>(r.next_long());
    m.spec.cnn.kernel = static_cast<int>(r.next_long());
    m.spec.cnn.head1 = static_cast<int>(r.next_long());
    m.spec.cnn.head2 = static_cast<int>(r.next_long());
    m.spec.cnn.head3 = static_cast<int>(r.next_long());

    if (m.spec.family == ModelFamily::Linear) {
        r.expect("linear");
        m.linear.differenced = r.next_long() != 0;
        m.linear.horizon = static_cast<int>(r.next_long());
        m.linear.intercept = r.next_double();
        m.linear.history_weights.resize(kWindowHours);
        for (double& v : m.linear.history_weights) v = r.next_double();
        m.linear.calendar_weights.resize(CalendarVector::kSize);
        for (double& v : m.linear.calendar_weights) v = r.next_double();
    } else {
        r.expect("norm");
        const std::size_t nf = static_cast<std::size_t>(r.next_long());
        m.norm.input_mean.resize(nf);
        for (double& v : m.norm.input_mean) v = r.next_double();
        m.norm.input_std.resize(nf);
        for (double& v : m.norm.input_std) v = r.next_double();
        m.norm.target_mean = r.next_double();
        m.norm.target_std = r.next_double();
        r.expect("params");
        const std::size_t np = static_cast<std::size_t>(r.next_long());
        m.params.resize(np);
        for (std::size_t i = 0; i < np; ++i) {
            r.expect("tensor");
            const std::size_t rank = static_cast<std::size_t>(r.next_long());
            std::vector<int> shape(rank);
            for (int& d : shape) d = static_cast<int>(r.next_long());
            TensorPtr t = make_tensor(shape, 0.0, true);
            for (double& v : t->data) v = r.next_double();
            m.params[i] = t;
        }
    }
    r.expect("end");
    return m;
}

inline TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open checkpoint: " + path);
    return load_model(in);
}

}  // namespace reprbench
