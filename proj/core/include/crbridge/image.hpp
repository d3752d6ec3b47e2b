#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace crbridge {

// Single-channel raster with intensities in [0,1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<float> pixels;  // row-major, height*width

    GrayImage() = default;
    GrayImage(int w, int h, float fill = 0.0f)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

    float& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    float at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }

    bool same_dims(const GrayImage& o) const { return width == o.width && height == o.height; }
};

// Per-pixel depth in meters; 0 encodes "no return".
struct DepthImage {
    int width = 0;
    int height = 0;
    std::vector<float> depths;  // row-major, meters

    DepthImage() = default;
    DepthImage(int w, int h, float fill = 0.0f)
        : width(w), height(h), depths(static_cast<size_t>(w) * h, fill) {}

    float& at(int x, int y) { return depths[static_cast<size_t>(y) * width + x]; }
    float at(int x, int y) const { return depths[static_cast<size_t>(y) * width + x]; }
};

// Time-stamped grayscale/normalized-depth pair from one scene instant.
struct FramePair {
    int index = 0;
    GrayImage gray;
    GrayImage depth_gray;
};

}  // namespace crbridge
