#include "crbridge/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crbridge {

void CameraIntrinsics::validate() const {
    if (fx <= 0 || fy <= 0) throw std::invalid_argument("intrinsics: focal lengths must be positive");
    if (cx < 0 || cx >= width || cy < 0 || cy >= height)
        throw std::invalid_argument("intrinsics: principal point outside image");
    if (width <= 0 || height <= 0) throw std::invalid_argument("intrinsics: non-positive image dims");
}

DepthImage project_point_cloud(const PointCloud& cloud, const CameraIntrinsics& intr) {
    intr.validate();
    DepthImage img(intr.width, intr.height, 0.0f);
    for (const Point3& p : cloud.points) {
        if (p.z <= 0) continue;
        const int u = static_cast<int>(std::floor(intr.fx * p.x / p.z + intr.cx));
        const int v = static_cast<int>(std::floor(intr.fy * p.y / p.z + intr.cy));
        if (u < 0 || u >= intr.width || v < 0 || v >= intr.height) continue;
        float& cell = img.at(u, v);
        if (cell == 0.0f || p.z < cell) cell = static_cast<float>(p.z);
    }
    return img;
}

GrayImage normalize_depth(const DepthImage& d, double max_range) {
    if (max_range <= 0) throw std::invalid_argument("normalize_depth: max_range must be positive");
    GrayImage out(d.width, d.height);
    for (size_t i = 0; i < d.depths.size(); ++i)
        out.pixels[i] = std::clamp(d.depths[i] / static_cast<float>(max_range), 0.0f, 1.0f);
    return out;
}

GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
    if (!r.same_dims(g) || !r.same_dims(b))
        throw std::invalid_argument("to_grayscale: channel dims differ");
    GrayImage out(r.width, r.height);
    for (size_t i = 0; i < out.pixels.size(); ++i)
        out.pixels[i] = 0.299f * r.pixels[i] + 0.587f * g.pixels[i] + 0.114f * b.pixels[i];
    return out;
}

GrayImage resize_bilinear(const GrayImage& img, int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("resize_bilinear: target dims must be >= 1");
    if (w == img.width && h == img.height) return img;
    GrayImage out(w, h);
    const double sx = static_cast<double>(img.width) / w;
    const double sy = static_cast<double>(img.height) / h;
    for (int y = 0; y < h; ++y) {
        const double fy = (y + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        const double wy = fy - y0;
        const int y1 = std::clamp(y0 + 1, 0, img.height - 1);
        y0 = std::clamp(y0, 0, img.height - 1);
        for (int x = 0; x < w; ++x) {
            const double fx = (x + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            const double wx = fx - x0;
            const int x1 = std::clamp(x0 + 1, 0, img.width - 1);
            x0 = std::clamp(x0, 0, img.width - 1);
            const double top = img.at(x0, y0) * (1.0 - wx) + img.at(x1, y0) * wx;
            const double bot = img.at(x0, y1) * (1.0 - wx) + img.at(x1, y1) * wx;
            out.at(x, y) = static_cast<float>(top * (1.0 - wy) + bot * wy);
        }
    }
    return out;
}

float chebyshev_score(const GrayImage& a, const GrayImage& b) {
    if (!a.same_dims(b)) throw std::invalid_argument("chebyshev_score: image dims differ");
    float m = 0.0f;
    for (size_t i = 0; i < a.pixels.size(); ++i)
        m = std::max(m, std::abs(a.pixels[i] - b.pixels[i]));
    return m;
}

void SamplerConfig::validate() const {
    if (p_similar < 0.0 || p_similar > 1.0)
        throw std::invalid_argument("sampler: p_similar must be in [0,1]");
    if (window_k < 1) throw std::invalid_argument("sampler: window_k must be >= 1");
}

int SiamesePairSampler::uniform_index(size_t n) {
    return static_cast<int>(std::uniform_int_distribution<size_t>(0, n - 1)(rng_));
}

SiameseSample SiamesePairSampler::sample(const std::vector<FramePair>& dataset) {
    const int n = static_cast<int>(dataset.size());
    if (n <= 2 * cfg_.window_k)
        throw std::invalid_argument("sampler: dataset must hold more than 2*window_k frames");

    const int i = uniform_index(dataset.size());
    const bool similar = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < cfg_.p_similar;

    int j;
    if (similar) {
        const int lo = std::max(0, i - cfg_.window_k);
        const int hi = std::min(n - 1, i + cfg_.window_k);
        j = lo + static_cast<int>(std::uniform_int_distribution<int>(0, hi - lo)(rng_));
    } else {
        // count of frames with |dt| > window_k
        const int lo = std::max(0, i - cfg_.window_k);
        const int hi = std::min(n - 1, i + cfg_.window_k);
        const int outside = n - (hi - lo + 1);
        int r = static_cast<int>(std::uniform_int_distribution<int>(0, outside - 1)(rng_));
        j = r < lo ? r : hi + 1 + (r - lo);
    }

    float delta = chebyshev_score(dataset[i].gray, dataset[j].gray);
    if (cfg_.similarity_polarity) delta = 1.0f - delta;
    return {i, j, delta};
}

std::string SiamesePairSampler::rng_state() const {
    std::ostringstream os;
    os << rng_;
    return os.str();
}

void SiamesePairSampler::restore_rng_state(const std::string& state) {
    std::istringstream is(state);
    is >> rng_;
    if (is.fail()) throw std::invalid_argument("sampler: bad rng state string");
}

}  // namespace crbridge
