#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "crbridge/tensor.hpp"

namespace crbridge {

enum class OptimizerKind { Sgd, Adam };

template <typename T>
struct OptimizerState {
    OptimizerKind kind = OptimizerKind::Adam;
    T learning_rate = T(1e-3);
    T beta1 = T(0.9);
    T beta2 = T(0.999);
    T epsilon = T(1e-8);
    int64_t step_count = 0;
    std::vector<std::vector<T>> m;  // first moments, adam only
    std::vector<std::vector<T>> v;  // second moments, adam only

    // One update over a fixed parameter ordering. Accumulators are allocated
    // lazily on the first step and must keep matching shapes afterwards.
    void step(const std::vector<Tensor<T>*>& params, const std::vector<const std::vector<T>*>& grads) {
        if (params.size() != grads.size())
            throw std::invalid_argument("optimizer: param/grad count mismatch");
        for (size_t p = 0; p < params.size(); ++p) {
            if (params[p]->values.size() != grads[p]->size())
                throw std::invalid_argument("optimizer: param/grad shape mismatch");
            for (T g : *grads[p])
                if (!std::isfinite(g)) throw std::runtime_error("optimizer: non-finite gradient");
        }
        if (kind == OptimizerKind::Adam && m.empty()) {
            for (auto* p : params) {
                m.emplace_back(p->values.size(), T(0));
                v.emplace_back(p->values.size(), T(0));
            }
        }
        if (kind == OptimizerKind::Adam && m.size() != params.size())
            throw std::invalid_argument("optimizer: accumulator count mismatch");

        ++step_count;
        for (size_t p = 0; p < params.size(); ++p) {
            std::vector<T>& w = params[p]->values;
            const std::vector<T>& g = *grads[p];
            if (kind == OptimizerKind::Sgd) {
                for (size_t i = 0; i < w.size(); ++i) w[i] -= learning_rate * g[i];
            } else {
                const T bc1 = T(1) - std::pow(beta1, static_cast<T>(step_count));
                const T bc2 = T(1) - std::pow(beta2, static_cast<T>(step_count));
                for (size_t i = 0; i < w.size(); ++i) {
                    m[p][i] = beta1 * m[p][i] + (T(1) - beta1) * g[i];
                    v[p][i] = beta2 * v[p][i] + (T(1) - beta2) * g[i] * g[i];
                    const T mhat = m[p][i] / bc1;
                    const T vhat = v[p][i] / bc2;
                    w[i] -= learning_rate * mhat / (std::sqrt(vhat) + epsilon);
                }
            }
        }
    }
};

}  // namespace crbridge
