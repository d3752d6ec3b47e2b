#include "crbridge/synthetic.hpp"

#include "crbridge/canny.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace crbridge {

namespace {

struct Vec3 {
    double x, y, z;
};

Vec3 normalize(Vec3 v) {
    const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    return {v.x / n, v.y / n, v.z / n};
}

constexpr double kInf = 1e30;

// Slab intersection; returns entry distance and face normal, or kInf.
double intersect_box(const SceneBox& b, const Vec3& o, const Vec3& d, Vec3& normal) {
    double tmin = -kInf, tmax = kInf;
    int axis = -1;
    double sign = 0;
    const double olist[3] = {o.x, o.y, o.z};
    const double dlist[3] = {d.x, d.y, d.z};
    const double lolist[3] = {b.lo.x, b.lo.y, b.lo.z};
    const double hilist[3] = {b.hi.x, b.hi.y, b.hi.z};
    for (int a = 0; a < 3; ++a) {
        if (std::abs(dlist[a]) < 1e-12) {
            if (olist[a] < lolist[a] || olist[a] > hilist[a]) return kInf;
            continue;
        }
        double t0 = (lolist[a] - olist[a]) / dlist[a];
        double t1 = (hilist[a] - olist[a]) / dlist[a];
        double s = -1.0;
        if (t0 > t1) {
            std::swap(t0, t1);
            s = 1.0;
        }
        if (t0 > tmin) {
            tmin = t0;
            axis = a;
            sign = s;
        }
        tmax = std::min(tmax, t1);
        if (tmin > tmax) return kInf;
    }
    if (tmin <= 1e-6 || axis < 0) return kInf;
    normal = {0, 0, 0};
    if (axis == 0) normal.x = sign;
    if (axis == 1) normal.y = sign;
    if (axis == 2) normal.z = sign;
    return tmin;
}

double checker_albedo(double u, double v, double scale, double phase, double a, double b) {
    const long cu = static_cast<long>(std::floor(u / scale + phase));
    const long cv = static_cast<long>(std::floor(v / scale + phase));
    return ((cu + cv) & 1) ? b : a;
}

}  // namespace

Scene make_scene(uint64_t seed, double trajectory_length) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count_dist(10, 30);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    Scene scene;
    const int n = count_dist(rng);
    for (int i = 0; i < n; ++i) {
        SceneBox b;
        const double w = 1.0 + 5.0 * u01(rng);
        const double h = 1.5 + 6.5 * u01(rng);
        const double depth = 1.0 + 5.0 * u01(rng);
        // keep a corridor clear around the camera path
        const double side = u01(rng) < 0.5 ? -1.0 : 1.0;
        const double x = side * (2.5 + 11.0 * u01(rng));
        const double z = 4.0 + (trajectory_length + 55.0) * u01(rng);
        b.lo = {x - w / 2, scene.ground_y - h, z - depth / 2};
        b.hi = {x + w / 2, scene.ground_y, z + depth / 2};
        b.albedo_a = 0.55 + 0.4 * u01(rng);
        b.albedo_b = 0.05 + 0.35 * u01(rng);
        b.checker = 0.5 + 1.5 * u01(rng);
        b.phase = u01(rng);
        scene.boxes.push_back(b);
    }
    return scene;
}

CameraPose trajectory_pose(uint64_t seed, int frame, double speed) {
    // smooth sway and yaw noise, phase-shifted per seed
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double p1 = u01(rng) * 6.28318530717958647692;
    const double p2 = u01(rng) * 6.28318530717958647692;
    CameraPose pose;
    pose.position = {0.35 * std::sin(0.07 * frame + p1), 0.0, frame * speed};
    pose.yaw = 0.015 * std::sin(0.11 * frame + p2) + 0.008 * std::sin(0.31 * frame + p1);
    return pose;
}

RenderedFrame render_frame(const Scene& scene, const CameraPose& pose, const CameraIntrinsics& intr) {
    intr.validate();
    RenderedFrame frame;
    frame.gray = GrayImage(intr.width, intr.height);
    frame.depth = DepthImage(intr.width, intr.height);

    const double cy_ = std::cos(pose.yaw), sy_ = std::sin(pose.yaw);
    const Vec3 origin{pose.position.x, pose.position.y, pose.position.z};
    const Vec3 light = normalize({0.35, -0.8, 0.45});

    for (int v = 0; v < intr.height; ++v) {
        for (int u = 0; u < intr.width; ++u) {
            // camera-frame direction with unit forward component; the ray
            // parameter is then the pinhole depth directly
            const Vec3 dc{(u + 0.5 - intr.cx) / intr.fx, (v + 0.5 - intr.cy) / intr.fy, 1.0};
            const Vec3 d{cy_ * dc.x + sy_ * dc.z, dc.y, -sy_ * dc.x + cy_ * dc.z};

            double best_t = kInf;
            Vec3 best_n{0, 0, 0};
            const SceneBox* best_box = nullptr;
            for (const SceneBox& b : scene.boxes) {
                Vec3 n;
                const double t = intersect_box(b, origin, d, n);
                if (t < best_t) {
                    best_t = t;
                    best_n = n;
                    best_box = &b;
                }
            }
            bool ground = false;
            if (d.y > 1e-9) {
                const double t = (scene.ground_y - origin.y) / d.y;
                if (t > 1e-6 && t < best_t) {
                    best_t = t;
                    best_n = {0, -1, 0};
                    best_box = nullptr;
                    ground = true;
                }
            }

            double shade;
            if (best_t >= kInf) {
                // sky: smooth vertical gradient, no depth return
                shade = 0.75 - 0.25 * (static_cast<double>(v) / intr.height);
                frame.depth.at(u, v) = 0.0f;
            } else {
                const Vec3 hit{origin.x + best_t * d.x, origin.y + best_t * d.y, origin.z + best_t * d.z};
                double albedo;
                if (ground) {
                    albedo = checker_albedo(hit.x, hit.z, scene.ground_checker, 0.0,
                                            scene.ground_albedo_a, scene.ground_albedo_b);
                } else {
                    const SceneBox& b = *best_box;
                    double fu, fv;
                    if (best_n.x != 0) {
                        fu = hit.z;
                        fv = hit.y;
                    } else if (best_n.y != 0) {
                        fu = hit.x;
                        fv = hit.z;
                    } else {
                        fu = hit.x;
                        fv = hit.y;
                    }
                    albedo = checker_albedo(fu, fv, b.checker, b.phase, b.albedo_a, b.albedo_b);
                }
                const double ndl = std::max(0.0, best_n.x * light.x + best_n.y * light.y + best_n.z * light.z);
                shade = albedo * (0.35 + 0.65 * ndl);
                frame.depth.at(u, v) = static_cast<float>(best_t);
            }
            frame.gray.at(u, v) = static_cast<float>(std::clamp(shade, 0.0, 1.0));
        }
    }
    return frame;
}

std::vector<FramePair> generate_sequence(uint64_t seed, int num_frames, const CameraIntrinsics& intr,
                                         const SyntheticOptions& opt) {
    if (num_frames < 1) throw std::invalid_argument("generate_sequence: num_frames must be >= 1");
    const Scene scene = make_scene(seed, num_frames * opt.speed);
    std::vector<FramePair> out;
    out.reserve(num_frames);
    for (int f = 0; f < num_frames; ++f) {
        RenderedFrame rf = render_frame(scene, trajectory_pose(seed, f, opt.speed), intr);
        // LiDAR-style sparsity: keep returns on every depth_row_stride-th row
        if (opt.depth_row_stride > 1) {
            for (int y = 0; y < rf.depth.height; ++y) {
                if (y % opt.depth_row_stride == 0) continue;
                for (int x = 0; x < rf.depth.width; ++x) rf.depth.at(x, y) = 0.0f;
            }
        }
        if (opt.blur_sigma > 0.0) rf.gray = gaussian_smooth(rf.gray, opt.blur_sigma);
        if (opt.contrast != 1.0) {
            for (float& v : rf.gray.pixels)
                v = std::clamp(0.5f + static_cast<float>(opt.contrast) * (v - 0.5f), 0.0f, 1.0f);
        }
        FramePair fp;
        fp.index = f;
        fp.gray = std::move(rf.gray);
        fp.depth_gray = normalize_depth(rf.depth, opt.max_range);
        out.push_back(std::move(fp));
    }
    return out;
}

CameraIntrinsics default_intrinsics(int width, int height) {
    CameraIntrinsics intr;
    intr.width = width;
    intr.height = height;
    intr.fx = 0.9 * width;
    intr.fy = 0.9 * width;
    intr.cx = width / 2.0;
    intr.cy = height / 2.0;
    return intr;
}

}  // namespace crbridge
