#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crbridge/image.hpp"

namespace crbridge {

struct Keypoint {
    float x = 0, y = 0;
    float response = 0;     // Harris corner score
    float orientation = 0;  // radians, intensity centroid
};

// 256-bit binary descriptor, rotated BRIEF.
struct Descriptor {
    std::array<uint64_t, 4> bits{};
};

struct Match {
    int index_a = 0;
    int index_b = 0;
    int distance = 0;  // Hamming bits
};

struct DetectorConfig {
    float fast_threshold = 0.08f;  // on [0,1] intensities
    int max_keypoints = 500;
    int margin = 16;  // keep patch radius inside the image
};

// FAST-9 segment test, Harris response ranking, intensity-centroid
// orientation over a radius-15 circular patch. Requires at least 48x48.
std::vector<Keypoint> detect_keypoints(const GrayImage& img, const DetectorConfig& cfg = {});

// Rotated BRIEF over a 5x5 box-smoothed image; bit set iff a < b strictly.
Descriptor describe(const GrayImage& img, const Keypoint& kp);
std::vector<Descriptor> describe_keypoints(const GrayImage& img, const std::vector<Keypoint>& kps);

int hamming_distance(const Descriptor& a, const Descriptor& b);

// Mutual nearest neighbors by Hamming distance; matches above max_distance
// bits are discarded.
std::vector<Match> match_descriptors(const std::vector<Descriptor>& a, const std::vector<Descriptor>& b,
                                     int max_distance = 80);

}  // namespace crbridge
