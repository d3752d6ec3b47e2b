#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crbridge/image.hpp"
#include "crbridge/tensor.hpp"

namespace crbridge {

enum class Activation { LeakyRelu, Sigmoid };

struct GeneratorConfig {
    int input_width = 320;
    int input_height = 160;
    std::vector<int> encoder_channels{16, 32, 64, 128};
    int kernel_size = 3;
    Activation hidden_activation = Activation::LeakyRelu;
    uint64_t seed = 0;

    int depth() const { return static_cast<int>(encoder_channels.size()); }
};

// Encoder: per stage conv(same) -> activation -> maxpool2x2.
// Decoder: per stage upsample2x -> conv -> activation, then a 1-channel
// conv head through a sigmoid so the CR lands in (0,1).
template <typename T>
struct GeneratorWeights {
    GeneratorConfig config;
    struct Layer {
        std::string name;
        Tensor<T> kernel;  // OxCxKxK
        Tensor<T> bias;    // O
    };
    std::vector<Layer> layers;

    long parameter_count() const {
        long n = 0;
        for (const auto& l : layers) n += l.kernel.size() + l.bias.size();
        return n;
    }
};

namespace detail {

template <typename T>
typename GeneratorWeights<T>::Layer make_conv_layer(const std::string& name, int in_ch, int out_ch,
                                                    int K, std::mt19937_64& rng) {
    // He-uniform over fan-in, biases start at zero.
    const double bound = std::sqrt(6.0 / (static_cast<double>(in_ch) * K * K));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Tensor<T> kernel = Tensor<T>::zeros({out_ch, in_ch, K, K});
    for (T& v : kernel.values) v = static_cast<T>(dist(rng));
    Tensor<T> bias = Tensor<T>::zeros({out_ch});
    return {name, std::move(kernel), std::move(bias)};
}

}  // namespace detail

template <typename T>
GeneratorWeights<T> build_generator(const GeneratorConfig& cfg) {
    const int div = 1 << cfg.depth();
    if (cfg.input_width % div != 0 || cfg.input_height % div != 0)
        throw std::invalid_argument("generator: input dims must be divisible by " + std::to_string(div) +
                                    " (2^encoder depth), got " + std::to_string(cfg.input_width) + "x" +
                                    std::to_string(cfg.input_height));
    if (cfg.kernel_size % 2 == 0 || cfg.kernel_size < 1)
        throw std::invalid_argument("generator: kernel size must be odd and positive");
    if (cfg.encoder_channels.empty())
        throw std::invalid_argument("generator: encoder_channels must be non-empty");

    std::mt19937_64 rng(cfg.seed);
    GeneratorWeights<T> w;
    w.config = cfg;

    int in_ch = 1;
    for (size_t i = 0; i < cfg.encoder_channels.size(); ++i) {
        w.layers.push_back(detail::make_conv_layer<T>("enc" + std::to_string(i), in_ch,
                                                      cfg.encoder_channels[i], cfg.kernel_size, rng));
        in_ch = cfg.encoder_channels[i];
    }
    for (size_t i = cfg.encoder_channels.size(); i-- > 0;) {
        const int out_ch = i > 0 ? cfg.encoder_channels[i - 1] : cfg.encoder_channels[0];
        w.layers.push_back(detail::make_conv_layer<T>("dec" + std::to_string(cfg.encoder_channels.size() - 1 - i),
                                                      in_ch, out_ch, cfg.kernel_size, rng));
        in_ch = out_ch;
    }
    w.layers.push_back(detail::make_conv_layer<T>("head", in_ch, 1, cfg.kernel_size, rng));
    return w;
}

// Forward through an active tape. Parameters must be watched beforehand if
// gradients are wanted; input is 1xHxW.
template <typename T>
Tensor<T> generator_forward(Tape<T>& tape, const GeneratorWeights<T>& w, const Tensor<T>& input) {
    const GeneratorConfig& cfg = w.config;
    if (input.shape.size() != 3 || input.shape[0] != 1 || input.shape[1] != cfg.input_height ||
        input.shape[2] != cfg.input_width)
        throw std::invalid_argument("generator: input must be 1x" + std::to_string(cfg.input_height) + "x" +
                                    std::to_string(cfg.input_width) + ", got " + shape_str(input));

    auto act = [&](const Tensor<T>& t) {
        return cfg.hidden_activation == Activation::LeakyRelu ? tape.leaky_relu(t) : tape.sigmoid(t);
    };

    const int n = cfg.depth();
    Tensor<T> x = input;
    size_t li = 0;
    for (int i = 0; i < n; ++i, ++li)
        x = tape.maxpool2x2(act(tape.conv2d(x, w.layers[li].kernel, w.layers[li].bias)));
    for (int i = 0; i < n; ++i, ++li)
        x = act(tape.conv2d(tape.upsample2x_nearest(x), w.layers[li].kernel, w.layers[li].bias));
    return tape.sigmoid(tape.conv2d(x, w.layers[li].kernel, w.layers[li].bias));
}

template <typename T>
void watch_parameters(Tape<T>& tape, GeneratorWeights<T>& w) {
    for (auto& l : w.layers) {
        tape.watch(l.kernel);
        tape.watch(l.bias);
    }
}

template <typename T>
void detach_parameters(GeneratorWeights<T>& w) {
    for (auto& l : w.layers) {
        l.kernel.node = -1;
        l.bias.node = -1;
    }
}

template <typename T>
Tensor<T> tensor_from_image(const GrayImage& img) {
    Tensor<T> t = Tensor<T>::zeros({1, img.height, img.width});
    for (size_t i = 0; i < img.pixels.size(); ++i) t.values[i] = static_cast<T>(img.pixels[i]);
    return t;
}

template <typename T>
GrayImage image_from_tensor(const Tensor<T>& t) {
    if (t.shape.size() != 3 || t.shape[0] != 1)
        throw std::invalid_argument("image_from_tensor: expected 1xHxW, got " + shape_str(t));
    GrayImage img(t.shape[2], t.shape[1]);
    for (size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<float>(t.values[i]);
    return img;
}

// Inference on a throwaway tape.
template <typename T>
GrayImage generator_infer(const GeneratorWeights<T>& w, const GrayImage& img) {
    Tape<T> tape;
    return image_from_tensor(generator_forward(tape, w, tensor_from_image<T>(img)));
}

}  // namespace crbridge
