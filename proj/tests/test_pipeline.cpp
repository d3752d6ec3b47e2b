#include <doctest.h>

#include <random>

#include "crbridge/pipeline.hpp"

using namespace crbridge;

namespace {

CameraIntrinsics test_intrinsics() {
    CameraIntrinsics intr;
    intr.fx = intr.fy = 100.0;
    intr.cx = 160.0;
    intr.cy = 80.0;
    intr.width = 320;
    intr.height = 160;
    return intr;
}

GrayImage random_gray(int w, int h, uint64_t seed) {
    GrayImage img(w, h);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    for (float& p : img.pixels) p = dist(rng);
    return img;
}

std::vector<FramePair> toy_dataset(int n) {
    std::vector<FramePair> ds;
    for (int i = 0; i < n; ++i) {
        FramePair f;
        f.index = i;
        f.gray = GrayImage(4, 4, static_cast<float>(i) / n);
        f.depth_gray = f.gray;
        ds.push_back(f);
    }
    return ds;
}

}  // namespace

TEST_CASE("pinhole projection basics") {
    const auto intr = test_intrinsics();
    PointCloud cloud;
    cloud.points = {{0, 0, 5}};
    auto img = project_point_cloud(cloud, intr);
    CHECK(img.at(160, 80) == doctest::Approx(5.0));

    cloud.points = {{1, 0, 5}};
    img = project_point_cloud(cloud, intr);
    CHECK(img.at(180, 80) == doctest::Approx(5.0));
}

TEST_CASE("z-buffer keeps the nearest point") {
    const auto intr = test_intrinsics();
    PointCloud cloud;
    cloud.points = {{0, 0, 5}, {0, 0, 3}};
    const auto img = project_point_cloud(cloud, intr);
    CHECK(img.at(160, 80) == doctest::Approx(3.0));
}

TEST_CASE("projection drops bad points, empty cloud gives zeros") {
    const auto intr = test_intrinsics();
    PointCloud cloud;
    cloud.points = {{0, 0, -5}, {1000, 0, 1}};
    const auto img = project_point_cloud(cloud, intr);
    for (float d : img.depths) CHECK(d == 0.0f);
}

TEST_CASE("normalize_depth") {
    DepthImage d(2, 1);
    d.at(0, 0) = 0.0f;
    d.at(1, 0) = 50.0f;
    const auto g = normalize_depth(d, 50.0);
    CHECK(g.at(0, 0) == 0.0f);
    CHECK(g.at(1, 0) == 1.0f);

    std::mt19937_64 rng(2);
    DepthImage r(8, 8);
    std::uniform_real_distribution<float> dist(0.0f, 80.0f);
    for (float& v : r.depths) v = dist(rng);
    const auto gr = normalize_depth(r, 50.0);
    for (size_t i = 0; i < r.depths.size(); ++i)
        CHECK(gr.pixels[i] == doctest::Approx(std::clamp(r.depths[i] / 50.0f, 0.0f, 1.0f)));
}

TEST_CASE("to_grayscale uses BT.601 weights") {
    const GrayImage one(1, 1, 1.0f), zero(1, 1, 0.0f);
    CHECK(to_grayscale(one, one, one).at(0, 0) == doctest::Approx(1.0));
    CHECK(to_grayscale(one, zero, zero).at(0, 0) == doctest::Approx(0.299));

    const auto r = random_gray(4, 4, 1), g = random_gray(4, 4, 2), b = random_gray(4, 4, 3);
    const auto gray = to_grayscale(r, g, b);
    for (int i = 0; i < 16; ++i)
        CHECK(gray.pixels[i] ==
              doctest::Approx(0.299f * r.pixels[i] + 0.587f * g.pixels[i] + 0.114f * b.pixels[i]));
}

TEST_CASE("resize_bilinear") {
    const auto img = random_gray(6, 4, 4);
    const auto same = resize_bilinear(img, 6, 4);
    CHECK(same.pixels == img.pixels);

    const GrayImage c(5, 5, 0.4f);
    const auto up = resize_bilinear(c, 9, 3);
    for (float p : up.pixels) CHECK(p == doctest::Approx(0.4f));

    // 4x4 horizontal ramp halved: target centers sample at source x = 0.5, 2.5
    GrayImage ramp(4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) ramp.at(x, y) = static_cast<float>(x);
    const auto half = resize_bilinear(ramp, 2, 2);
    CHECK(half.at(0, 0) == doctest::Approx(0.5));
    CHECK(half.at(1, 0) == doctest::Approx(2.5));
}

TEST_CASE("chebyshev_score") {
    const auto a = random_gray(8, 8, 6);
    CHECK(chebyshev_score(a, a) == 0.0f);

    const GrayImage x(1, 1, 0.3f), y(1, 1, 0.8f);
    CHECK(chebyshev_score(x, y) == doctest::Approx(0.5));

    const auto b = random_gray(8, 8, 7);
    float expect = 0;
    for (int i = 0; i < 64; ++i) expect = std::max(expect, std::abs(a.pixels[i] - b.pixels[i]));
    CHECK(chebyshev_score(a, b) == doctest::Approx(expect));

    CHECK_THROWS_AS(chebyshev_score(a, x), std::invalid_argument);
}

TEST_CASE("chebyshev_score is a metric on random triples") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_gray(6, 6, rng()), b = random_gray(6, 6, rng()), c = random_gray(6, 6, rng());
        const float ab = chebyshev_score(a, b), ba = chebyshev_score(b, a);
        CHECK(ab == ba);
        CHECK(chebyshev_score(a, c) <= ab + chebyshev_score(b, c) + 1e-6f);
    }
}

TEST_CASE("sampler forced branches") {
    const auto ds = toy_dataset(30);

    SamplerConfig cfg;
    cfg.window_k = 3;
    cfg.p_similar = 1.0;
    SiamesePairSampler similar(cfg);
    for (int i = 0; i < 200; ++i) {
        const auto s = similar.sample(ds);
        CHECK(std::abs(s.index1 - s.index2) <= 3);
    }

    cfg.p_similar = 0.0;
    SiamesePairSampler dissimilar(cfg);
    for (int i = 0; i < 200; ++i) {
        const auto s = dissimilar.sample(ds);
        CHECK(std::abs(s.index1 - s.index2) > 3);
    }
}

TEST_CASE("sampler similar fraction approaches p_similar") {
    const auto ds = toy_dataset(40);
    SamplerConfig cfg;
    cfg.p_similar = 0.5;
    cfg.seed = 123;
    SiamesePairSampler sampler(cfg);
    const int draws = 10000;
    int similar = 0;
    for (int i = 0; i < draws; ++i) {
        const auto s = sampler.sample(ds);
        if (std::abs(s.index1 - s.index2) <= cfg.window_k) ++similar;
    }
    const double frac = static_cast<double>(similar) / draws;
    CHECK(frac > 0.48);
    CHECK(frac < 0.52);
}

TEST_CASE("sampler rejects tiny datasets") {
    SamplerConfig cfg;
    SiamesePairSampler sampler(cfg);
    const auto ds = toy_dataset(6);
    CHECK_THROWS_AS(sampler.sample(ds), std::invalid_argument);
}
