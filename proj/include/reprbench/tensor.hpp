#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reprbench/errors.hpp"

namespace reprbench {

// Dense 64-bit tensor, rank <= 4, row-major, with an optional gradient buffer.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;
    std::vector<double> grad;  // allocated on demand, same length as data
    bool requires_grad = false;

    Tensor() = default;
    Tensor(std::vector<int> shp, double fill) : shape(std::move(shp)) {
        data.assign(count(shape), fill);
    }

    static std::size_t count(const std::vector<int>& shp) {
        std::size_t n = 1;
        for (int d : shp) n *= static_cast<std::size_t>(d);
        return n;
    }

    std::size_t size() const { return data.size(); }
    int rank() const { return static_cast<int>(shape.size()); }
    int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }

    void ensure_grad() {
        if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
    }
    void zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }
};

using TensorPtr = std::shared_ptr<Tensor>;

inline TensorPtr make_tensor(std::vector<int> shape, double fill = 0.0,
                             bool requires_grad = false) {
    auto t = std::make_shared<Tensor>(std::move(shape), fill);
    t->requires_grad = requires_grad;
    if (requires_grad) t->ensure_grad();
    return t;
}

inline TensorPtr make_tensor(std::vector<int> shape, std::vector<double> values,
                             bool requires_grad = false) {
    auto t = std::make_shared<Tensor>();
    t->shape = std::move(shape);
    if (Tensor::count(t->shape) != values.size())
        throw ShapeMismatch("make_tensor: values do not match shape");
    t->data = std::move(values);
    t->requires_grad = requires_grad;
    if (requires_grad) t->ensure_grad();
    return t;
}

inline double scalar_value(const TensorPtr& t) {
    if (t->size() != 1) throw ShapeMismatch("scalar_value: tensor is not scalar");
    return t->data[0];
}

namespace detail {
inline void check_finite(const Tensor& t) {
#ifndef NDEBUG
    for (double v : t.data) assert(std::isfinite(v));
#else
    (void)t;
#endif
}
}  // namespace detail

// Reverse-mode tape. Forward ops append their backward rule in execution order,
// so replaying the tape backwards visits every node after all of its uses.
class Graph {
public:
    void record(std::function<void()> backward_rule) { tape_.push_back(std::move(backward_rule)); }

    std::size_t size() const { return tape_.size(); }

    void clear() { tape_.clear(); }

    // Seeds d(loss)/d(loss) = 1 and propagates through the recorded tape.
    void backward(const TensorPtr& loss) {
        if (loss->size() != 1) throw NotScalarLoss("backward: loss must be scalar");
        loss->ensure_grad();
        loss->grad[0] += 1.0;
        for (auto it = tape_.rbegin(); it != tape_.rend(); ++it) (*it)();
    }

private:
    std::vector<std::function<void()>> tape_;
};

namespace detail {
inline bool track(const Graph* g, std::initializer_list<const TensorPtr*> inputs) {
    if (g == nullptr) return false;
    for (const TensorPtr* t : inputs)
        if ((*t)->requires_grad) return true;
    return false;
}
}  // namespace detail

// y = W x + b. Accepts x of shape [n_in] or a batch [B, n_in]; W is
// [n_out, n_in], b is [n_out]. Pass g = nullptr for inference.
inline TensorPtr dense(Graph* g, const TensorPtr& x, const TensorPtr& W, const TensorPtr& b) {
    if (W->rank() != 2 || b->rank() != 1 || b->dim(0) != W->dim(0))
        throw ShapeMismatch("dense: W must be [n_out, n_in] and b [n_out]");
    const int n_out = W->dim(0);
    const int n_in = W->dim(1);
    const bool batched = x->rank() == 2;
    if ((batched ? x->dim(1) : (x->rank() == 1 ? x->dim(0) : -1)) != n_in)
        throw ShapeMismatch("dense: input width " + std::to_string(x->size()) +
                            " does not match n_in=" + std::to_string(n_in));
    const int B = batched ? x->dim(0) : 1;

    TensorPtr out = make_tensor(batched ? std::vector<int>{B, n_out} : std::vector<int>{n_out});
    for (int i = 0; i < B; ++i) {
        const double* xrow = x->data.data() + static_cast<std::size_t>(i) * n_in;
        double* yrow = out->data.data() + static_cast<std::size_t>(i) * n_out;
        for (int j = 0; j < n_out; ++j) {
            const double* wrow = W->data.data() + static_cast<std::size_t>(j) * n_in;
            double s = b->data[static_cast<std::size_t>(j)];
            for (int p = 0; p < n_in; ++p) s += wrow[p] * xrow[p];
            yrow[j] = s;
        }
    }
    detail::check_finite(*out);

    if (detail::track(g, {&x, &W, &b})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([x, W, b, out, B, n_in, n_out] {
            const double* dy = out->grad.data();
            if (x->requires_grad) {
                x->ensure_grad();
                for (int i = 0; i < B; ++i) {
                    const double* dyrow = dy + static_cast<std::size_t>(i) * n_out;
                    double* dxrow = x->grad.data() + static_cast<std::size_t>(i) * n_in;
                    for (int j = 0; j < n_out; ++j) {
                        const double gj = dyrow[j];
                        if (gj == 0.0) continue;
                        const double* wrow = W->data.data() + static_cast<std::size_t>(j) * n_in;
                        for (int p = 0; p < n_in; ++p) dxrow[p] += gj * wrow[p];
                    }
                }
            }
            if (W->requires_grad) {
                W->ensure_grad();
                for (int i = 0; i < B; ++i) {
                    const double* dyrow = dy + static_cast<std::size_t>(i) * n_out;
                    const double* xrow = x->data.data() + static_cast<std::size_t>(i) * n_in;
                    for (int j = 0; j < n_out; ++j) {
                        const double gj = dyrow[j];
                        if (gj == 0.0) continue;
                        double* dwrow = W->grad.data() + static_cast<std::size_t>(j) * n_in;
                        for (int p = 0; p < n_in; ++p) dwrow[p] += gj * xrow[p];
                    }
                }
            }
            if (b->requires_grad) {
                b->ensure_grad();
                for (int i = 0; i < B; ++i)
                    for (int j = 0; j < n_out; ++j)
                        b->grad[static_cast<std::size_t>(j)] +=
                            dy[static_cast<std::size_t>(i) * n_out + j];
            }
        });
    }
    return out;
}

// Valid cross-correlation. x is [C,H,W] or [B,C,H,W]; K is [F,C,r,s]; b is [F].
inline TensorPtr conv2d(Graph* g, const TensorPtr& x, const TensorPtr& K, const TensorPtr& b) {
    if (K->rank() != 4 || b->rank() != 1 || b->dim(0) != K->dim(0))
        throw ShapeMismatch("conv2d: kernel must be [F,C,r,s] with bias [F]");
    const bool batched = x->rank() == 4;
    if (!batched && x->rank() != 3) throw ShapeMismatch("conv2d: input must be rank 3 or 4");
    const int B = batched ? x->dim(0) : 1;
    const int C = x->dim(batched ? 1 : 0);
    const int H = x->dim(batched ? 2 : 1);
    const int W = x->dim(batched ? 3 : 2);
    const int F = K->dim(0);
    const int r = K->dim(2);
    const int s = K->dim(3);
    if (K->dim(1) != C) throw ShapeMismatch("conv2d: channel mismatch");
    if (r > H || s > W) throw KernelTooLarge("conv2d: kernel exceeds input size");
    const int OH = H - r + 1;
    const int OW = W - s + 1;

    TensorPtr out = make_tensor(batched ? std::vector<int>{B, F, OH, OW}
                                        : std::vector<int>{F, OH, OW});
    const auto xat = [&](int bb, int c, int i, int j) -> std::size_t {
        return ((static_cast<std::size_t>(bb) * C + c) * H + i) * W + j;
    };
    const auto oat = [&](int bb, int f, int i, int j) -> std::size_t {
        return ((static_cast<std::size_t>(bb) * F + f) * OH + i) * OW + j;
    };
    const auto kat = [&](int f, int c, int i, int j) -> std::size_t {
        return ((static_cast<std::size_t>(f) * C + c) * r + i) * s + j;
    };

    for (int bb = 0; bb < B; ++bb)
        for (int f = 0; f < F; ++f) {
            double* obase = out->data.data() + oat(bb, f, 0, 0);
            const double bias = b->data[static_cast<std::size_t>(f)];
            for (int i = 0; i < OH * OW; ++i) obase[i] = bias;
            for (int c = 0; c < C; ++c)
                for (int kr = 0; kr < r; ++kr)
                    for (int ks = 0; ks < s; ++ks) {
                        const double kv = K->data[kat(f, c, kr, ks)];
                        for (int oi = 0; oi < OH; ++oi) {
                            const double* xrow = x->data.data() + xat(bb, c, oi + kr, ks);
                            double* orow = obase + static_cast<std::size_t>(oi) * OW;
                            for (int oj = 0; oj < OW; ++oj) orow[oj] += kv * xrow[oj];
                        }
                    }
        }
    detail::check_finite(*out);

    if (detail::track(g, {&x, &K, &b})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([x, K, b, out, B, C, H, W, F, r, s, OH, OW, xat, oat, kat] {
            if (x->requires_grad) {
                x->ensure_grad();
                for (int bb = 0; bb < B; ++bb)
                    for (int f = 0; f < F; ++f)
                        for (int c = 0; c < C; ++c)
                            for (int kr = 0; kr < r; ++kr)
                                for (int ks = 0; ks < s; ++ks) {
                                    const double kv = K->data[kat(f, c, kr, ks)];
                                    if (kv == 0.0) continue;
                                    for (int oi = 0; oi < OH; ++oi) {
                                        const double* dyrow = out->grad.data() + oat(bb, f, oi, 0);
                                        double* dxrow = x->grad.data() + xat(bb, c, oi + kr, ks);
                                        for (int oj = 0; oj < OW; ++oj)
                                            dxrow[oj] += kv * dyrow[oj];
                                    }
                                }
            }
            if (K->requires_grad) {
                K->ensure_grad();
                for (int bb = 0; bb < B; ++bb)
                    for (int f = 0; f < F; ++f)
                        for (int c = 0; c < C; ++c)
                            for (int kr = 0; kr < r; ++kr)
                                for (int ks = 0; ks < s; ++ks) {
                                    double acc = 0.0;
                                    for (int oi = 0; oi < OH; ++oi) {
                                        const double* dyrow = out->grad.data() + oat(bb, f, oi, 0);
                                        const double* xrow =
                                            x->data.data() + xat(bb, c, oi + kr, ks);
                                        for (int oj = 0; oj < OW; ++oj)
                                            acc += dyrow[oj] * xrow[oj];
                                    }
                                    K->grad[kat(f, c, kr, ks)] += acc;
                                }
            }
            if (b->requires_grad) {
                b->ensure_grad();
                for (int bb = 0; bb < B; ++bb)
                    for (int f = 0; f < F; ++f) {
                        const double* dyrow = out->grad.data() + oat(bb, f, 0, 0);
                        double acc = 0.0;
                        for (int i = 0; i < OH * OW; ++i) acc += dyrow[i];
                        b->grad[static_cast<std::size_t>(f)] += acc;
                    }
            }
        });
    }
    return out;
}

inline TensorPtr add(Graph* g, const TensorPtr& a, const TensorPtr& b) {
    if (a->shape != b->shape) throw ShapeMismatch("add: shape mismatch");
    TensorPtr out = make_tensor(a->shape);
    for (std::size_t i = 0; i < a->size(); ++i) out->data[i] = a->data[i] + b->data[i];
    if (detail::track(g, {&a, &b})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([a, b, out] {
            if (a->requires_grad) {
                a->ensure_grad();
                for (std::size_t i = 0; i < a->size(); ++i) a->grad[i] += out->grad[i];
            }
            if (b->requires_grad) {
                b->ensure_grad();
                for (std::size_t i = 0; i < b->size(); ++i) b->grad[i] += out->grad[i];
            }
        });
    }
    return out;
}

// Elementwise product; both uses of a shared input accumulate into its grad.
inline TensorPtr mul(Graph* g, const TensorPtr& a, const TensorPtr& b) {
    if (a->shape != b->shape) throw ShapeMismatch("mul: shape mismatch");
    TensorPtr out = make_tensor(a->shape);
    for (std::size_t i = 0; i < a->size(); ++i) out->data[i] = a->data[i] * b->data[i];
    if (detail::track(g, {&a, &b})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([a, b, out] {
            if (a->requires_grad) {
                a->ensure_grad();
                for (std::size_t i = 0; i < a->size(); ++i)
                    a->grad[i] += out->grad[i] * b->data[i];
            }
            if (b->requires_grad) {
                b->ensure_grad();
                for (std::size_t i = 0; i < b->size(); ++i)
                    b->grad[i] += out->grad[i] * a->data[i];
            }
        });
    }
    return out;
}

inline TensorPtr scale(Graph* g, const TensorPtr& x, double factor) {
    TensorPtr out = make_tensor(x->shape);
    for (std::size_t i = 0; i < x->size(); ++i) out->data[i] = factor * x->data[i];
    if (detail::track(g, {&x})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([x, out, factor] {
            x->ensure_grad();
            for (std::size_t i = 0; i < x->size(); ++i) x->grad[i] += factor * out->grad[i];
        });
    }
    return out;
}

inline TensorPtr relu(Graph* g, const TensorPtr& x) {
    TensorPtr out = make_tensor(x->shape);
    for (std::size_t i = 0; i < x->size(); ++i) out->data[i] = x->data[i] > 0.0 ? x->data[i] : 0.0;
    if (detail::track(g, {&x})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([x, out] {
            x->ensure_grad();
            for (std::size_t i = 0; i < x->size(); ++i)
                if (x->data[i] > 0.0) x->grad[i] += out->grad[i];
        });
    }
    return out;
}

// Joins two same-rank tensors along `axis`; all other dimensions must match.
inline TensorPtr concat(Graph* g, const TensorPtr& a, const TensorPtr& b, int axis = 0) {
    if (a->rank() != b->rank()) throw ShapeMismatch("concat: rank mismatch");
    if (axis < 0 || axis >= a->rank()) throw ShapeMismatch("concat: bad axis");
    for (int i = 0; i < a->rank(); ++i)
        if (i != axis && a->dim(i) != b->dim(i))
            throw ShapeMismatch("concat: shapes differ off the concat axis");

    std::vector<int> shape = a->shape;
    shape[static_cast<std::size_t>(axis)] += b->dim(axis);
    TensorPtr out = make_tensor(shape);

    // treat tensors as [outer, axis, inner]
    std::size_t outer = 1, inner = 1;
    for (int i = 0; i < axis; ++i) outer *= static_cast<std::size_t>(a->dim(i));
    for (int i = axis + 1; i < a->rank(); ++i) inner *= static_cast<std::size_t>(a->dim(i));
    const std::size_t a_span = static_cast<std::size_t>(a->dim(axis)) * inner;
    const std::size_t b_span = static_cast<std::size_t>(b->dim(axis)) * inner;

    for (std::size_t o = 0; o < outer; ++o) {
        std::copy(a->data.begin() + o * a_span, a->data.begin() + (o + 1) * a_span,
                  out->data.begin() + o * (a_span + b_span));
        std::copy(b->data.begin() + o * b_span, b->data.begin() + (o + 1) * b_span,
                  out->data.begin() + o * (a_span + b_span) + a_span);
    }

    if (detail::track(g, {&a, &b})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([a, b, out, outer, a_span, b_span] {
            for (std::size_t o = 0; o < outer; ++o) {
                const double* dy = out->grad.data() + o * (a_span + b_span);
                if (a->requires_grad) {
                    a->ensure_grad();
                    double* da = a->grad.data() + o * a_span;
                    for (std::size_t i = 0; i < a_span; ++i) da[i] += dy[i];
                }
                if (b->requires_grad) {
                    b->ensure_grad();
                    double* db = b->grad.data() + o * b_span;
                    for (std::size_t i = 0; i < b_span; ++i) db[i] += dy[i];
                }
            }
        });
    }
    return out;
}

namespace detail {
inline TensorPtr reshape_identity(Graph* g, const TensorPtr& x, std::vector<int> shape) {
    if (Tensor::count(shape) != x->size()) throw ShapeMismatch("reshape: element count mismatch");
    TensorPtr out = make_tensor(std::move(shape));
    out->data = x->data;
    if (detail::track(g, {&x})) {
        out->requires_grad = true;
        out->ensure_grad();
        g->record([x, out] {
            x->ensure_grad();
            for (std::size_t i = 0; i < x->size(); ++i) x->grad[i] += out->grad[i];
        });
    }
    return out;
}
}  // namespace detail

// Row-major flatten to rank 1.
inline TensorPtr flatten(Graph* g, const TensorPtr& x) {
    return detail::reshape_identity(g, x, {static_cast<int>(x->size())});
}

// Flattens everything except the leading (batch) dimension: [B,...] -> [B, rest].
inline TensorPtr flatten_rows(Graph* g, const TensorPtr& x) {
    if (x->rank() < 2) throw ShapeMismatch("flatten_rows: need rank >= 2");
    const int B = x->dim(0);
    return detail::reshape_identity(g, x, {B, static_cast<int>(x->size()) / B});
}

inline TensorPtr reshape_tensor(Graph* g, const TensorPtr& x, std::vector<int> shape) {
    return detail::reshape_identity(g, x, std::move(shape));
}

// Mean absolute error against fixed targets; the subgradient at zero error is 0.
// pred may be [B], [B,1], or a scalar [1] with a single target.
inline TensorPtr l1_loss(Graph* g, const TensorPtr& pred, std::span<const double> targets) {
    const std::size_t B = targets.size();
    if (pred->size() != B)
        throw ShapeMismatch("l1_loss: " + std::to_string(pred->size()) + " predictions vs " +
                            std::to_string(B) + " targets");
    if (B == 0) throw EmptyInput("l1_loss: no targets");

    TensorPtr out = make_tensor({1});
    double acc = 0.0;
    for (std::size_t i = 0; i < B; ++i) acc += std::fabs(pred->data[i] - targets[i]);
    out->data[0] = acc / static_cast<double>(B);

    if (detail::track(g, {&pred})) {
        out->requires_grad = true;
        out->ensure_grad();
        std::vector<double> tgt(targets.begin(), targets.end());
        g->record([pred, out, tgt = std::move(tgt)] {
            pred->ensure_grad();
            const double scale = out->grad[0] / static_cast<double>(tgt.size());
            for (std::size_t i = 0; i < tgt.size(); ++i) {
                const double diff = pred->data[i] - tgt[i];
                if (diff > 0.0)
                    pred->grad[i] += scale;
                else if (diff < 0.0)
                    pred->grad[i] -= scale;
            }
        });
    }
    return out;
}

}  // namespace reprbench
