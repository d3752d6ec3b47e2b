#pragma once

#include "crbridge/image.hpp"

namespace crbridge {

struct CannyConfig {
    double gaussian_sigma = 1.4;  // blur kernel radius = ceil(3*sigma)
    double low_threshold = 0.05;  // on normalized gradient magnitude
    double high_threshold = 0.15;

    void validate() const;
};

// Five fixed stages: 2D Gaussian blur (edge-clamped) -> Sobel 3x3 ->
// magnitude normalized by 4*sqrt(2) with 4-bin angle quantization ->
// non-maximum suppression -> double-threshold hysteresis (8-connected).
// Output pixels are exactly 0 or 1.
GrayImage canny(const GrayImage& img, const CannyConfig& cfg = {});

// The blur stage on its own (same edge-clamped 2D kernel canny uses).
GrayImage gaussian_smooth(const GrayImage& img, double sigma);

}  // namespace crbridge
