#include <benchmark/benchmark.h>

#include <random>

#include "crbridge/canny.hpp"
#include "crbridge/features.hpp"
#include "crbridge/generator.hpp"
#include "crbridge/tensor.hpp"

using namespace crbridge;

namespace {

GrayImage random_gray(int w, int h, uint64_t seed) {
    GrayImage img(w, h);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    for (float& p : img.pixels) p = dist(rng);
    return img;
}

}  // namespace

static void BM_Conv2dForward(benchmark::State& state) {
    const int hw = static_cast<int>(state.range(0));
    Tape<float> tape;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    auto input = Tensor<float>::zeros({8, hw, hw});
    auto kernel = Tensor<float>::zeros({8, 8, 3, 3});
    auto bias = Tensor<float>::zeros({8});
    for (float& v : input.values) v = dist(rng);
    for (float& v : kernel.values) v = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(tape.conv2d(input, kernel, bias));
}
BENCHMARK(BM_Conv2dForward)->Arg(32)->Arg(64);

static void BM_Canny(benchmark::State& state) {
    const auto img = random_gray(320, 160, 2);
    for (auto _ : state) benchmark::DoNotOptimize(canny(img));
}
BENCHMARK(BM_Canny);

static void BM_GeneratorInference(benchmark::State& state) {
    GeneratorConfig cfg;
    cfg.input_width = 64;
    cfg.input_height = 32;
    cfg.encoder_channels = {8, 16};
    const auto w = build_generator<float>(cfg);
    const auto img = random_gray(64, 32, 3);
    for (auto _ : state) benchmark::DoNotOptimize(generator_infer(w, img));
}
BENCHMARK(BM_GeneratorInference);

static void BM_DetectAndDescribe(benchmark::State& state) {
    const auto img = random_gray(320, 160, 4);
    for (auto _ : state) {
        const auto kps = detect_keypoints(img);
        benchmark::DoNotOptimize(describe_keypoints(img, kps));
    }
}
BENCHMARK(BM_DetectAndDescribe);

static void BM_Matching(benchmark::State& state) {
    const auto a = random_gray(320, 160, 5);
    const auto b = random_gray(320, 160, 6);
    const auto da = describe_keypoints(a, detect_keypoints(a));
    const auto db = describe_keypoints(b, detect_keypoints(b));
    for (auto _ : state) benchmark::DoNotOptimize(match_descriptors(da, db, 256));
}
BENCHMARK(BM_Matching);
