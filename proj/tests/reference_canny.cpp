#include "reference_canny.hpp"

#include <cmath>
#include <vector>

namespace testref {

using crbridge::CannyConfig;
using crbridge::GrayImage;

GrayImage naive_canny(const GrayImage& img, const CannyConfig& cfg) {
    const int W = img.width, H = img.height;
    auto clamp = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };

    // stage 1: Gaussian blur, full 2D kernel, edge clamped
    const int r = static_cast<int>(std::ceil(3.0 * cfg.gaussian_sigma));
    double ksum = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            ksum += std::exp(-(dx * dx + dy * dy) / (2.0 * cfg.gaussian_sigma * cfg.gaussian_sigma));

    std::vector<std::vector<double>> blurred(H, std::vector<double>(W));
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double w =
                        std::exp(-(dx * dx + dy * dy) / (2.0 * cfg.gaussian_sigma * cfg.gaussian_sigma)) /
                        ksum;
                    acc += w * static_cast<double>(
                                   img.at(clamp(x + dx, 0, W - 1), clamp(y + dy, 0, H - 1)));
                }
            blurred[y][x] = acc;
        }

    // stage 2+3: Sobel gradients, normalized magnitude, quantized angle
    std::vector<std::vector<double>> mag(H, std::vector<double>(W));
    std::vector<std::vector<int>> dir(H, std::vector<int>(W));
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const int gx_k[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
            const int gy_k[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
            double gx = 0.0, gy = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const double v = blurred[clamp(y + dy, 0, H - 1)][clamp(x + dx, 0, W - 1)];
                    gx += gx_k[dy + 1][dx + 1] * v;
                    gy += gy_k[dy + 1][dx + 1] * v;
                }
            mag[y][x] = std::sqrt(gx * gx + gy * gy) / (4.0 * std::sqrt(2.0));
            double deg = std::atan2(gy, gx) * 180.0 / 3.14159265358979323846;
            if (deg < 0) deg += 180.0;
            if (deg < 22.5 || deg >= 157.5)
                dir[y][x] = 0;
            else if (deg < 67.5)
                dir[y][x] = 1;
            else if (deg < 112.5)
                dir[y][x] = 2;
            else
                dir[y][x] = 3;
        }

    // stage 4: non-maximum suppression, >= backward and > forward neighbor
    auto mag_at = [&](int x, int y) { return (x < 0 || x >= W || y < 0 || y >= H) ? 0.0 : mag[y][x]; };
    std::vector<std::vector<double>> thin(H, std::vector<double>(W, 0.0));
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            int fx = 0, fy = 0;
            switch (dir[y][x]) {
                case 0: fx = 1; fy = 0; break;
                case 1: fx = 1; fy = 1; break;
                case 2: fx = 0; fy = 1; break;
                default: fx = 1; fy = -1; break;
            }
            if (mag[y][x] >= mag_at(x - fx, y - fy) && mag[y][x] > mag_at(x + fx, y + fy))
                thin[y][x] = mag[y][x];
        }

    // stage 5: hysteresis by sweeping to a fixpoint
    std::vector<std::vector<int>> edge(H, std::vector<int>(W, 0));
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            if (thin[y][x] >= cfg.high_threshold) edge[y][x] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) {
                if (edge[y][x] || thin[y][x] < cfg.low_threshold) continue;
                for (int dy = -1; dy <= 1 && !edge[y][x]; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || nx >= W || ny < 0 || ny >= H) continue;
                        if (edge[ny][nx]) {
                            edge[y][x] = 1;
                            changed = true;
                            break;
                        }
                    }
            }
    }

    GrayImage out(W, H, 0.0f);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) out.at(x, y) = edge[y][x] ? 1.0f : 0.0f;
    return out;
}

}  // namespace testref
