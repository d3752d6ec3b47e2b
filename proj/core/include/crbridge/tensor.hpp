#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crbridge {

// Shaped numeric array, optionally attached to an autodiff tape.
// node < 0 means the tensor is a constant (or an unwatched leaf).
template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> values;
    bool requires_grad = false;
    int node = -1;

    Tensor() = default;
    Tensor(std::vector<int> s, std::vector<T> v) : shape(std::move(s)), values(std::move(v)) {
        if (size() != static_cast<long>(values.size()))
            throw std::invalid_argument("tensor: shape/value count mismatch");
        if (shape.empty() || shape.size() > 4)
            throw std::invalid_argument("tensor: rank must be 1..4");
    }

    static Tensor zeros(std::vector<int> s) {
        long n = 1;
        for (int d : s) n *= d;
        return Tensor(std::move(s), std::vector<T>(static_cast<size_t>(n), T(0)));
    }
    static Tensor scalar(T v) { return Tensor({1}, {v}); }

    long size() const {
        long n = 1;
        for (int d : shape) n *= d;
        return n;
    }
    bool is_scalar() const { return size() == 1; }
    T item() const {
        if (!is_scalar()) throw std::invalid_argument("tensor: item() on non-scalar");
        return values[0];
    }
    bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

template <typename T>
std::string shape_str(const Tensor<T>& t) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < t.shape.size(); ++i) os << (i ? "x" : "") << t.shape[i];
    os << "]";
    return os.str();
}

// Reverse-mode tape. Operations record a backward closure; backward() replays
// them in reverse, accumulating gradients additively across fan-out.
template <typename T>
class Tape {
public:
    // Register a leaf parameter so it receives a gradient.
    void watch(Tensor<T>& t) {
        if (t.node >= 0) return;
        t.requires_grad = true;
        t.node = add_node(t.size());
    }

    const std::vector<T>& grad(const Tensor<T>& t) const {
        if (t.node < 0) throw std::invalid_argument("tape: tensor not on tape");
        return grads_[t.node];
    }

    void clear() {
        grads_.clear();
        records_.clear();
    }

    // ---- primitives ----

    // Cross-correlation with "same" zero padding, stride 1.
    // input CxHxW, kernels OxCxKxK, bias O -> OxHxW.
    Tensor<T> conv2d(const Tensor<T>& input, const Tensor<T>& kernels, const Tensor<T>& bias) {
        if (input.shape.size() != 3 || kernels.shape.size() != 4 || bias.shape.size() != 1)
            throw std::invalid_argument("conv2d: expected input CxHxW, kernels OxCxKxK, bias O");
        const int C = input.shape[0], H = input.shape[1], W = input.shape[2];
        const int O = kernels.shape[0], KC = kernels.shape[1], K = kernels.shape[2];
        if (kernels.shape[3] != K) throw std::invalid_argument("conv2d: kernels must be square");
        if (K % 2 == 0) throw std::invalid_argument("conv2d: kernel size must be odd");
        if (KC != C)
            throw std::invalid_argument("conv2d: input channels " + shape_str(input) +
                                        " do not match kernel channels " + shape_str(kernels));
        if (bias.shape[0] != O) throw std::invalid_argument("conv2d: bias size must equal output channels");
        const int P = K / 2;

        Tensor<T> out = Tensor<T>::zeros({O, H, W});
        const T* in = input.values.data();
        const T* kn = kernels.values.data();
        T* ov = out.values.data();
        for (int o = 0; o < O; ++o) {
            const T b = bias.values[o];
            for (int y = 0; y < H; ++y) {
                for (int x = 0; x < W; ++x) {
                    T acc = b;
                    for (int c = 0; c < C; ++c) {
                        const T* inc = in + static_cast<size_t>(c) * H * W;
                        const T* knc = kn + ((static_cast<size_t>(o) * C + c) * K) * K;
                        for (int ky = 0; ky < K; ++ky) {
                            const int iy = y + ky - P;
                            if (iy < 0 || iy >= H) continue;
                            for (int kx = 0; kx < K; ++kx) {
                                const int ix = x + kx - P;
                                if (ix < 0 || ix >= W) continue;
                                acc += inc[static_cast<size_t>(iy) * W + ix] * knc[ky * K + kx];
                            }
                        }
                    }
                    ov[(static_cast<size_t>(o) * H + y) * W + x] = acc;
                }
            }
        }

        attach(out);
        if (recording(input, kernels, bias)) {
            const int in_node = input.node, k_node = kernels.node, b_node = bias.node;
            const int out_node = out.node;
            std::vector<T> in_vals = input.values;
            std::vector<T> k_vals = kernels.values;
            records_.push_back([this, in_node, k_node, b_node, out_node, in_vals, k_vals, C, H, W, O, K, P] {
                const std::vector<T>& go = grads_[out_node];
                for (int o = 0; o < O; ++o) {
                    for (int y = 0; y < H; ++y) {
                        for (int x = 0; x < W; ++x) {
                            const T g = go[(static_cast<size_t>(o) * H + y) * W + x];
                            if (b_node >= 0) grads_[b_node][o] += g;
                            for (int c = 0; c < C; ++c) {
                                for (int ky = 0; ky < K; ++ky) {
                                    const int iy = y + ky - P;
                                    if (iy < 0 || iy >= H) continue;
                                    for (int kx = 0; kx < K; ++kx) {
                                        const int ix = x + kx - P;
                                        if (ix < 0 || ix >= W) continue;
                                        const size_t ii = (static_cast<size_t>(c) * H + iy) * W + ix;
                                        const size_t ki = ((static_cast<size_t>(o) * C + c) * K + ky) * K + kx;
                                        if (in_node >= 0) grads_[in_node][ii] += g * k_vals[ki];
                                        if (k_node >= 0) grads_[k_node][ki] += g * in_vals[ii];
                                    }
                                }
                            }
                        }
                    }
                }
            });
        }
        return out;
    }

    // 2x2 max pooling; gradient routes to the first row-major argmax in ties.
    Tensor<T> maxpool2x2(const Tensor<T>& input) {
        if (input.shape.size() != 3) throw std::invalid_argument("maxpool2x2: expected CxHxW");
        const int C = input.shape[0], H = input.shape[1], W = input.shape[2];
        if (H % 2 != 0 || W % 2 != 0)
            throw std::invalid_argument("maxpool2x2: spatial dims must be even, got " + shape_str(input));
        const int Ho = H / 2, Wo = W / 2;
        Tensor<T> out = Tensor<T>::zeros({C, Ho, Wo});
        std::vector<size_t> argmax(out.values.size());
        for (int c = 0; c < C; ++c) {
            for (int y = 0; y < Ho; ++y) {
                for (int x = 0; x < Wo; ++x) {
                    size_t best = 0;
                    T best_v = T(0);
                    bool first = true;
                    for (int dy = 0; dy < 2; ++dy) {
                        for (int dx = 0; dx < 2; ++dx) {
                            const size_t ii = (static_cast<size_t>(c) * H + 2 * y + dy) * W + 2 * x + dx;
                            const T v = input.values[ii];
                            if (first || v > best_v) {
                                best_v = v;
                                best = ii;
                                first = false;
                            }
                        }
                    }
                    const size_t oi = (static_cast<size_t>(c) * Ho + y) * Wo + x;
                    out.values[oi] = best_v;
                    argmax[oi] = best;
                }
            }
        }
        attach(out);
        if (recording(input)) {
            const int in_node = input.node, out_node = out.node;
            records_.push_back([this, in_node, out_node, argmax = std::move(argmax)] {
                const std::vector<T>& go = grads_[out_node];
                for (size_t i = 0; i < go.size(); ++i) grads_[in_node][argmax[i]] += go[i];
            });
        }
        return out;
    }

    // Nearest-neighbor 2x upsampling; backward sums each 2x2 block.
    Tensor<T> upsample2x_nearest(const Tensor<T>& input) {
        if (input.shape.size() != 3) throw std::invalid_argument("upsample2x_nearest: expected CxHxW");
        const int C = input.shape[0], H = input.shape[1], W = input.shape[2];
        Tensor<T> out = Tensor<T>::zeros({C, 2 * H, 2 * W});
        for (int c = 0; c < C; ++c)
            for (int y = 0; y < 2 * H; ++y)
                for (int x = 0; x < 2 * W; ++x)
                    out.values[(static_cast<size_t>(c) * 2 * H + y) * 2 * W + x] =
                        input.values[(static_cast<size_t>(c) * H + y / 2) * W + x / 2];
        attach(out);
        if (recording(input)) {
            const int in_node = input.node, out_node = out.node;
            records_.push_back([this, in_node, out_node, C, H, W] {
                const std::vector<T>& go = grads_[out_node];
                for (int c = 0; c < C; ++c)
                    for (int y = 0; y < 2 * H; ++y)
                        for (int x = 0; x < 2 * W; ++x)
                            grads_[in_node][(static_cast<size_t>(c) * H + y / 2) * W + x / 2] +=
                                go[(static_cast<size_t>(c) * 2 * H + y) * 2 * W + x];
            });
        }
        return out;
    }

    Tensor<T> leaky_relu(const Tensor<T>& input, T slope = T(0.1)) {
        Tensor<T> out = input;
        out.node = -1;
        out.requires_grad = false;
        for (T& v : out.values) v = v >= T(0) ? v : slope * v;
        attach(out);
        if (recording(input)) {
            const int in_node = input.node, out_node = out.node;
            std::vector<T> in_vals = input.values;
            records_.push_back([this, in_node, out_node, in_vals = std::move(in_vals), slope] {
                const std::vector<T>& go = grads_[out_node];
                for (size_t i = 0; i < go.size(); ++i)
                    grads_[in_node][i] += go[i] * (in_vals[i] >= T(0) ? T(1) : slope);
            });
        }
        return out;
    }

    Tensor<T> sigmoid(const Tensor<T>& input) {
        Tensor<T> out = input;
        out.node = -1;
        out.requires_grad = false;
        for (T& v : out.values) v = T(1) / (T(1) + std::exp(-v));
        attach(out);
        if (recording(input)) {
            const int in_node = input.node, out_node = out.node;
            std::vector<T> out_vals = out.values;
            records_.push_back([this, in_node, out_node, out_vals = std::move(out_vals)] {
                const std::vector<T>& go = grads_[out_node];
                for (size_t i = 0; i < go.size(); ++i)
                    grads_[in_node][i] += go[i] * out_vals[i] * (T(1) - out_vals[i]);
            });
        }
        return out;
    }

    // (1/N) * sum |a_i - b_i|; subgradient 0 where a_i == b_i.
    Tensor<T> mean_abs_diff(const Tensor<T>& a, const Tensor<T>& b) {
        if (!a.same_shape(b))
            throw std::invalid_argument("mean_abs_diff: shape mismatch " + shape_str(a) + " vs " + shape_str(b));
        const long n = a.size();
        T acc = T(0);
        for (long i = 0; i < n; ++i) acc += std::abs(a.values[i] - b.values[i]);
        Tensor<T> out = Tensor<T>::scalar(acc / static_cast<T>(n));
        attach(out);
        if (recording(a, b)) {
            const int a_node = a.node, b_node = b.node, out_node = out.node;
            std::vector<T> a_vals = a.values, b_vals = b.values;
            records_.push_back([this, a_node, b_node, out_node, a_vals = std::move(a_vals),
                                b_vals = std::move(b_vals), n] {
                const T g = grads_[out_node][0] / static_cast<T>(n);
                for (long i = 0; i < n; ++i) {
                    const T d = a_vals[i] - b_vals[i];
                    const T s = d > T(0) ? T(1) : (d < T(0) ? T(-1) : T(0));
                    if (a_node >= 0) grads_[a_node][i] += g * s;
                    if (b_node >= 0) grads_[b_node][i] -= g * s;
                }
            });
        }
        return out;
    }

    Tensor<T> abs_scalar(const Tensor<T>& x) {
        if (!x.is_scalar()) throw std::invalid_argument("abs_scalar: expected scalar tensor");
        Tensor<T> out = Tensor<T>::scalar(std::abs(x.values[0]));
        attach(out);
        if (recording(x)) {
            const int in_node = x.node, out_node = out.node;
            const T v = x.values[0];
            records_.push_back([this, in_node, out_node, v] {
                const T s = v > T(0) ? T(1) : (v < T(0) ? T(-1) : T(0));
                grads_[in_node][0] += grads_[out_node][0] * s;
            });
        }
        return out;
    }

    Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b) { return elementwise(a, b, T(1)); }
    Tensor<T> sub(const Tensor<T>& a, const Tensor<T>& b) { return elementwise(a, b, T(-1)); }

    Tensor<T> scale(const Tensor<T>& a, T k) {
        Tensor<T> out = a;
        out.node = -1;
        out.requires_grad = false;
        for (T& v : out.values) v *= k;
        attach(out);
        if (recording(a)) {
            const int a_node = a.node, out_node = out.node;
            records_.push_back([this, a_node, out_node, k] {
                const std::vector<T>& go = grads_[out_node];
                for (size_t i = 0; i < go.size(); ++i) grads_[a_node][i] += k * go[i];
            });
        }
        return out;
    }

    // Seeds d(loss)/d(loss) = 1 and replays records in reverse.
    void backward(const Tensor<T>& loss) {
        if (!loss.is_scalar()) throw std::invalid_argument("backward: root must be a scalar");
        if (loss.node < 0) throw std::invalid_argument("backward: root is not on this tape");
        grads_[loss.node][0] = T(1);
        for (auto it = records_.rbegin(); it != records_.rend(); ++it) (*it)();
    }

private:
    std::vector<std::vector<T>> grads_;
    std::vector<std::function<void()>> records_;

    int add_node(long size) {
        grads_.emplace_back(static_cast<size_t>(size), T(0));
        return static_cast<int>(grads_.size()) - 1;
    }
    void attach(Tensor<T>& out) {
        out.requires_grad = true;
        out.node = add_node(out.size());
    }
    template <typename... Ts>
    static bool recording(const Ts&... ts) {
        return ((ts.node >= 0) || ...);
    }

    Tensor<T> elementwise(const Tensor<T>& a, const Tensor<T>& b, T b_sign) {
        if (!a.same_shape(b))
            throw std::invalid_argument("add/sub: shape mismatch " + shape_str(a) + " vs " + shape_str(b));
        Tensor<T> out = a;
        out.node = -1;
        out.requires_grad = false;
        for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += b_sign * b.values[i];
        attach(out);
        if (recording(a, b)) {
            const int a_node = a.node, b_node = b.node, out_node = out.node;
            records_.push_back([this, a_node, b_node, out_node, b_sign] {
                const std::vector<T>& go = grads_[out_node];
                for (size_t i = 0; i < go.size(); ++i) {
                    if (a_node >= 0) grads_[a_node][i] += go[i];
                    if (b_node >= 0) grads_[b_node][i] += b_sign * go[i];
                }
            });
        }
        return out;
    }
};

}  // namespace crbridge
