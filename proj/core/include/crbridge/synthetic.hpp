#pragma once

#include <cstdint>
#include <vector>

#include "crbridge/image.hpp"
#include "crbridge/pipeline.hpp"

namespace crbridge {

// Axis-aligned textured box. World frame: x right, y down, z forward;
// ground plane at y = ground_y, camera starts at the origin looking +z.
struct SceneBox {
    Point3 lo, hi;          // lo.y < hi.y, hi.y on the ground
    double albedo_a = 0.8;  // checker colors
    double albedo_b = 0.3;
    double checker = 1.0;   // checker edge length, meters
    double phase = 0.0;
};

struct Scene {
    std::vector<SceneBox> boxes;
    double ground_y = 1.5;
    double ground_albedo_a = 0.55;
    double ground_albedo_b = 0.35;
    double ground_checker = 2.0;
};

struct CameraPose {
    Point3 position;
    double yaw = 0.0;  // about world y, radians
};

struct RenderedFrame {
    GrayImage gray;
    DepthImage depth;  // exact ray-cast depth, meters; 0 = sky
};

struct SyntheticOptions {
    double max_range = 50.0;    // depth normalization, meters
    int depth_row_stride = 2;   // LiDAR scan-line subsampling
    double speed = 0.25;        // forward meters per frame
    double blur_sigma = 0.0;    // camera defocus: Gaussian blur of the gray image (0 = sharp)
    double contrast = 1.0;      // gray tone-map 0.5 + contrast*(v - 0.5)
};

// Deterministic box-world scene for a given seed.
Scene make_scene(uint64_t seed, double trajectory_length);

CameraPose trajectory_pose(uint64_t seed, int frame, double speed);

// One ray per pixel, Lambertian checker shading, exact depth raster.
RenderedFrame render_frame(const Scene& scene, const CameraPose& pose, const CameraIntrinsics& intr);

// Full sequence: renders frames along the trajectory and applies scan-line
// depth sparsity plus [0,1] depth normalization.
std::vector<FramePair> generate_sequence(uint64_t seed, int num_frames, const CameraIntrinsics& intr,
                                         const SyntheticOptions& opt = {});

CameraIntrinsics default_intrinsics(int width, int height);

}  // namespace crbridge
