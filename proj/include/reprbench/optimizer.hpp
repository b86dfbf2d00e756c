#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "reprbench/errors.hpp"
#include "reprbench/tensor.hpp"

namespace reprbench {

// Adam with bias correction. Moment buffers are laid out to match the
// parameter list passed to the first step.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::int64_t t = 0;
    std::vector<std::vector<double>> m;
    std::vector<std::vector<double>> v;
};

// One update over all parameters; gradients are consumed and zeroed.
inline void adam_step(const std::vector<TensorPtr>& params, AdamState& st) {
    if (st.m.empty()) {
        st.m.resize(params.size());
        st.v.resize(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) {
            st.m[i].assign(params[i]->size(), 0.0);
            st.v[i].assign(params[i]->size(), 0.0);
        }
    }
    ++st.t;
    const double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.t));
    const double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        Tensor& p = *params[i];
        if (p.grad.size() != p.data.size())
            throw MissingGradient("adam_step: parameter " + std::to_string(i) + " has no gradient");
        std::vector<double>& m = st.m[i];
        std::vector<double>& v = st.v[i];
        for (std::size_t j = 0; j < p.data.size(); ++j) {
            const double g = p.grad[j];
            m[j] = st.beta1 * m[j] + (1.0 - st.beta1) * g;
            v[j] = st.beta2 * v[j] + (1.0 - st.beta2) * g * g;
            const double mhat = m[j] / bc1;
            const double vhat = v[j] / bc2;
            p.data[j] -= st.lr * mhat / (std::sqrt(vhat) + st.eps);
        }
        p.zero_grad();
    }
}

}  // namespace reprbench
