#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crbridge/image.hpp"
#include "crbridge/pipeline.hpp"

namespace crbridge {

// Dataset directory: frames/NNNNNN.gray.pgm (8-bit) plus
// frames/NNNNNN.depth.pgm (16-bit mm), with manifest.json alongside.
struct DatasetManifest {
    uint64_t seed = 0;
    int num_frames = 0;
    double max_range = 50.0;
    CameraIntrinsics intrinsics;
};

void save_dataset(const std::string& dir, const std::vector<FramePair>& frames,
                  const DatasetManifest& manifest);

struct LoadedDataset {
    std::vector<FramePair> frames;
    DatasetManifest manifest;
};

LoadedDataset load_dataset(const std::string& dir);

}  // namespace crbridge
