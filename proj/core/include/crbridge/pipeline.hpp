#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crbridge/image.hpp"

namespace crbridge {

struct Point3 {
    double x = 0, y = 0, z = 0;
};

struct PointCloud {
    std::vector<Point3> points;  // meters, sensor frame
};

struct CameraIntrinsics {
    double fx = 0, fy = 0;  // focal lengths, pixels
    double cx = 0, cy = 0;  // principal point, pixels
    int width = 0, height = 0;

    void validate() const;
};

// Pinhole projection with per-pixel z-buffer; points behind the camera or
// off-image are dropped. 0 stays "no return".
DepthImage project_point_cloud(const PointCloud& cloud, const CameraIntrinsics& intr);

// pixel = clamp(depth / max_range, 0, 1)
GrayImage normalize_depth(const DepthImage& d, double max_range);

// ITU-R BT.601 luma weights.
GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b);

// Bilinear resampling with edge-clamped source coordinates.
GrayImage resize_bilinear(const GrayImage& img, int w, int h);

// Chebyshev (L-inf) distance between two rasters in [0,1]; 0 for identical
// images, larger for more dissimilar ones.
float chebyshev_score(const GrayImage& a, const GrayImage& b);

struct SamplerConfig {
    double p_similar = 0.5;
    int window_k = 3;
    uint64_t seed = 0;
    // Flips the difference-score polarity to "high value for similar pairs".
    bool similarity_polarity = false;

    void validate() const;
};

struct SiameseSample {
    int index1 = 0;
    int index2 = 0;
    float delta_cheb = 0;
};

// Owns its seeded generator; not safe to share across threads.
class SiamesePairSampler {
public:
    SiamesePairSampler(SamplerConfig cfg) : cfg_(cfg), rng_(cfg.seed) { cfg_.validate(); }

    // Anchor uniform; with p_similar the partner comes from |dt| <= window_k,
    // otherwise uniformly from outside the window.
    SiameseSample sample(const std::vector<FramePair>& dataset);

    int uniform_index(size_t n);

    std::string rng_state() const;
    void restore_rng_state(const std::string& state);

private:
    SamplerConfig cfg_;
    std::mt19937_64 rng_;
};

}  // namespace crbridge
