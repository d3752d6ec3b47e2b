#pragma once

#include <string>
#include <vector>

#include "crbridge/features.hpp"
#include "crbridge/generator.hpp"
#include "crbridge/homography.hpp"
#include "crbridge/image.hpp"

namespace crbridge {

enum class EvalTransform { RawImage, ImageCr, DepthCr, CrossCr };

struct EvalConfig {
    int n_pairs = 100;
    int pair_offset = 1;  // 0 evaluates each frame against itself
    DetectorConfig detector;
    int match_max_distance = 80;
    RansacConfig ransac;
};

struct EvalReport {
    double avg_distance_raw = 0;         // mean match Hamming distance
    double avg_distance_normalized = 0;  // raw / baseline raw, when a baseline is given
    double avg_matches = 0;
    double avg_reprojection_px = 0;
    int pairs_evaluated = 0;
    int dropped_pairs = 0;  // pairs without a usable homography
};

// Runs detect -> describe -> match -> RANSAC -> reprojection over
// consecutive frame pairs under the chosen transform. CrossCr matches the
// image CR at t against the depth CR at t+offset. Per-pair work runs on up
// to CRBRIDGE_THREADS workers; the aggregate is a fixed-order reduction.
EvalReport evaluate_pairs(const std::vector<FramePair>& frames, EvalTransform transform,
                          const GeneratorWeights<float>* image_weights,
                          const GeneratorWeights<float>* depth_weights, const EvalConfig& cfg,
                          const EvalReport* baseline = nullptr);

// CSV schema:
// condition,avg_distance_raw,avg_distance_normalized,avg_matches,avg_reprojection_px,pairs,dropped
void write_report_csv(const std::string& path,
                      const std::vector<std::pair<std::string, EvalReport>>& rows);

const char* transform_name(EvalTransform t);

}  // namespace crbridge
