#include "crbridge/canny.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace crbridge {

void CannyConfig::validate() const {
    if (gaussian_sigma <= 0) throw std::invalid_argument("canny: sigma must be positive");
    if (!(0 < low_threshold && low_threshold < high_threshold))
        throw std::invalid_argument("canny: need 0 < low_threshold < high_threshold");
}

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

std::vector<double> gaussian_blur(const GrayImage& img, double sigma) {
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    const int K = 2 * r + 1;
    std::vector<double> kernel(static_cast<size_t>(K) * K);
    double sum = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            kernel[static_cast<size_t>(dy + r) * K + (dx + r)] = w;
            sum += w;
        }
    for (double& w : kernel) w /= sum;

    const int W = img.width, H = img.height;
    std::vector<double> out(static_cast<size_t>(W) * H);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = clampi(y + dy, 0, H - 1);
                for (int dx = -r; dx <= r; ++dx) {
                    const int sx = clampi(x + dx, 0, W - 1);
                    acc += kernel[static_cast<size_t>(dy + r) * K + (dx + r)] *
                           static_cast<double>(img.at(sx, sy));
                }
            }
            out[static_cast<size_t>(y) * W + x] = acc;
        }
    return out;
}

// quantized gradient direction: 0 = E-W, 1 = 45deg, 2 = N-S, 3 = 135deg
int quantize_angle(double gx, double gy) {
    double deg = std::atan2(gy, gx) * 180.0 / 3.14159265358979323846;
    if (deg < 0) deg += 180.0;
    if (deg < 22.5 || deg >= 157.5) return 0;
    if (deg < 67.5) return 1;
    if (deg < 112.5) return 2;
    return 3;
}

}  // namespace

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
    if (sigma <= 0) throw std::invalid_argument("gaussian_smooth: sigma must be positive");
    const std::vector<double> blurred = gaussian_blur(img, sigma);
    GrayImage out(img.width, img.height);
    for (size_t i = 0; i < blurred.size(); ++i) out.pixels[i] = static_cast<float>(blurred[i]);
    return out;
}

GrayImage canny(const GrayImage& img, const CannyConfig& cfg) {
    cfg.validate();
    const int W = img.width, H = img.height;
    const std::vector<double> blurred = gaussian_blur(img, cfg.gaussian_sigma);

    static const int sobel_x[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    static const int sobel_y[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};

    std::vector<double> mag(static_cast<size_t>(W) * H);
    std::vector<int> dir(static_cast<size_t>(W) * H);
    const double norm = 4.0 * std::sqrt(2.0);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            double gx = 0.0, gy = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                const int sy = clampi(y + dy, 0, H - 1);
                for (int dx = -1; dx <= 1; ++dx) {
                    const int sx = clampi(x + dx, 0, W - 1);
                    const double v = blurred[static_cast<size_t>(sy) * W + sx];
                    gx += sobel_x[dy + 1][dx + 1] * v;
                    gy += sobel_y[dy + 1][dx + 1] * v;
                }
            }
            const size_t i = static_cast<size_t>(y) * W + x;
            mag[i] = std::sqrt(gx * gx + gy * gy) / norm;
            dir[i] = quantize_angle(gx, gy);
        }

    // NMS with a pinned tie-break: survive iff mag >= backward neighbor and
    // mag > forward neighbor along the quantized direction.
    static const int fwd[4][2] = {{1, 0}, {1, 1}, {0, 1}, {1, -1}};
    std::vector<double> nms(static_cast<size_t>(W) * H, 0.0);
    auto mag_at = [&](int x, int y) -> double {
        if (x < 0 || x >= W || y < 0 || y >= H) return 0.0;
        return mag[static_cast<size_t>(y) * W + x];
    };
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const size_t i = static_cast<size_t>(y) * W + x;
            const int* f = fwd[dir[i]];
            const double m = mag[i];
            if (m >= mag_at(x - f[0], y - f[1]) && m > mag_at(x + f[0], y + f[1]))
                nms[i] = m;
        }

    // hysteresis: seed from strong pixels, grow through weak 8-neighbors
    GrayImage out(W, H, 0.0f);
    std::vector<size_t> stack;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const size_t i = static_cast<size_t>(y) * W + x;
            if (nms[i] >= cfg.high_threshold && out.pixels[i] == 0.0f) {
                out.pixels[i] = 1.0f;
                stack.push_back(i);
                while (!stack.empty()) {
                    const size_t j = stack.back();
                    stack.pop_back();
                    const int jy = static_cast<int>(j) / W, jx = static_cast<int>(j) % W;
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            const int nx = jx + dx, ny = jy + dy;
                            if (nx < 0 || nx >= W || ny < 0 || ny >= H) continue;
                            const size_t k = static_cast<size_t>(ny) * W + nx;
                            if (out.pixels[k] == 0.0f && nms[k] >= cfg.low_threshold) {
                                out.pixels[k] = 1.0f;
                                stack.push_back(k);
                            }
                        }
                }
            }
        }
    return out;
}

}  // namespace crbridge
