#include <doctest.h>

#include <random>

#include "crbridge/generator.hpp"

using namespace crbridge;

namespace {

GeneratorConfig small_config() {
    GeneratorConfig cfg;
    cfg.input_width = 64;
    cfg.input_height = 32;
    cfg.encoder_channels = {16, 32};
    cfg.seed = 9;
    return cfg;
}

GrayImage random_image(int w, int h, uint64_t seed) {
    GrayImage img(w, h);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    for (float& p : img.pixels) p = dist(rng);
    return img;
}

}  // namespace

TEST_CASE("generator layer structure") {
    const auto w = build_generator<float>(small_config());
    CHECK(w.layers.size() == 5);  // 2 enc + 2 dec + head
    CHECK(w.layers.front().kernel.shape == std::vector<int>{16, 1, 3, 3});
    CHECK(w.layers.back().kernel.shape == std::vector<int>{1, 16, 3, 3});
}

TEST_CASE("generator init is deterministic under seed") {
    const auto a = build_generator<float>(small_config());
    const auto b = build_generator<float>(small_config());
    for (size_t i = 0; i < a.layers.size(); ++i)
        CHECK(a.layers[i].kernel.values == b.layers[i].kernel.values);
}

TEST_CASE("parameter count matches closed form") {
    GeneratorConfig cfg = small_config();
    cfg.encoder_channels = {4, 8};
    const auto w = build_generator<float>(cfg);
    // enc: 1->4, 4->8; dec: 8->4, 4->4; head: 4->1, K=3
    const long expected = (9 * 1 * 4 + 4) + (9 * 4 * 8 + 8) + (9 * 8 * 4 + 4) + (9 * 4 * 4 + 4) +
                          (9 * 4 * 1 + 1);
    CHECK(w.parameter_count() == expected);
}

TEST_CASE("generator rejects indivisible input dims") {
    GeneratorConfig cfg = small_config();
    cfg.input_width = 30;
    CHECK_THROWS_WITH_AS(static_cast<void>(build_generator<float>(cfg)),
                         doctest::Contains("divisible"), std::invalid_argument);
}

TEST_CASE("forward shape, range and determinism") {
    const auto w = build_generator<float>(small_config());
    const GrayImage img = random_image(64, 32, 3);
    const GrayImage cr = generator_infer(w, img);
    CHECK(cr.width == 64);
    CHECK(cr.height == 32);
    for (float p : cr.pixels) {
        CHECK(p > 0.0f);
        CHECK(p < 1.0f);
    }
    const GrayImage cr2 = generator_infer(w, img);
    CHECK(cr.pixels == cr2.pixels);
}

TEST_CASE("forward rejects dimension mismatch") {
    const auto w = build_generator<float>(small_config());
    CHECK_THROWS_AS(generator_infer(w, random_image(32, 32, 1)), std::invalid_argument);
}

TEST_CASE("bottleneck spatial dims follow encoder depth") {
    auto w = build_generator<float>(small_config());
    Tape<float> tape;
    Tensor<float> x = tensor_from_image<float>(random_image(64, 32, 5));
    for (int i = 0; i < 2; ++i)
        x = tape.maxpool2x2(tape.leaky_relu(tape.conv2d(x, w.layers[i].kernel, w.layers[i].bias)));
    CHECK(x.shape == std::vector<int>{32, 8, 16});
}

TEST_CASE("spatial locality of the receptive field") {
    const auto w = build_generator<float>(small_config());
    GrayImage img = random_image(64, 32, 17);
    const GrayImage base = generator_infer(w, img);

    // zero a 4x4 patch and bound where the output may change:
    // per encoder stage conv(K=3) adds 1 at full res, then pooling halves;
    // total footprint radius at input resolution for this config is < 16.
    const int px = 40, py = 16, radius = 16;
    for (int y = py; y < py + 4; ++y)
        for (int x = px; x < px + 4; ++x) img.at(x, y) = 0.0f;
    const GrayImage changed = generator_infer(w, img);

    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 64; ++x) {
            const bool inside = x >= px - radius && x < px + 4 + radius && y >= py - radius &&
                                y < py + 4 + radius;
            if (!inside) CHECK(changed.at(x, y) == base.at(x, y));
        }
}
