#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crbridge/features.hpp"

namespace crbridge {

// 3x3 projective map, row-major, normalized so h[8] == 1.
struct Homography {
    std::array<double, 9> h{1, 0, 0, 0, 1, 0, 0, 0, 1};

    std::array<double, 2> apply(double x, double y) const;
    Homography inverse() const;
    double det() const;
};

struct RansacConfig {
    int iterations = 2000;
    double inlier_px = 3.0;
    uint64_t seed = 0;
};

struct RansacResult {
    Homography h;
    std::vector<int> inliers;  // indices into the match list
};

// Least-squares DLT with Hartley normalization (centroid to origin, mean
// distance sqrt(2)). Needs >= 4 correspondences.
Homography fit_homography_dlt(const std::vector<std::array<double, 2>>& a,
                              const std::vector<std::array<double, 2>>& b);

// Minimal 4-point RANSAC with symmetric transfer error; the best model is
// refit on all of its inliers. Degenerate (collinear) samples are skipped.
RansacResult estimate_homography_ransac(const std::vector<Match>& matches,
                                        const std::vector<Keypoint>& kps_a,
                                        const std::vector<Keypoint>& kps_b,
                                        const RansacConfig& cfg = {});

double symmetric_transfer_error(const Homography& h, const std::array<double, 2>& pa,
                                const std::array<double, 2>& pb);

// Mean symmetric transfer error over the given inlier matches, pixels.
double reprojection_error(const Homography& h, const std::vector<int>& inliers,
                          const std::vector<Match>& matches, const std::vector<Keypoint>& kps_a,
                          const std::vector<Keypoint>& kps_b);

}  // namespace crbridge
