#include "crbridge/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "crbridge/orb_pattern.hpp"

namespace crbridge {

namespace {

constexpr int kCircle[16][2] = {{0, -3}, {1, -3}, {2, -2},  {3, -1},  {3, 0},   {3, 1},
                                {2, 2},  {1, 3},  {0, 3},   {-1, 3},  {-2, 2},  {-3, 1},
                                {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3}};

bool fast9_corner(const GrayImage& img, int x, int y, float t) {
    const float p = img.at(x, y);
    int state[16];
    for (int i = 0; i < 16; ++i) {
        const float v = img.at(x + kCircle[i][0], y + kCircle[i][1]);
        state[i] = v > p + t ? 1 : (v < p - t ? -1 : 0);
    }
    for (int sign : {1, -1}) {
        int run = 0;
        for (int i = 0; i < 32; ++i) {
            if (state[i & 15] == sign) {
                if (++run >= 9) return true;
            } else {
                run = 0;
            }
        }
    }
    return false;
}

float harris_response(const GrayImage& img, int x, int y) {
    double sxx = 0, syy = 0, sxy = 0;
    for (int dy = -3; dy <= 3; ++dy)
        for (int dx = -3; dx <= 3; ++dx) {
            const int px = x + dx, py = y + dy;
            const double ix = img.at(px + 1, py) - img.at(px - 1, py);
            const double iy = img.at(px, py + 1) - img.at(px, py - 1);
            sxx += ix * ix;
            syy += iy * iy;
            sxy += ix * iy;
        }
    const double det = sxx * syy - sxy * sxy;
    const double tr = sxx + syy;
    return static_cast<float>(det - 0.04 * tr * tr);
}

float centroid_orientation(const GrayImage& img, int x, int y) {
    constexpr int R = 15;
    double m10 = 0, m01 = 0;
    for (int dy = -R; dy <= R; ++dy)
        for (int dx = -R; dx <= R; ++dx) {
            if (dx * dx + dy * dy > R * R) continue;
            const double v = img.at(x + dx, y + dy);
            m10 += dx * v;
            m01 += dy * v;
        }
    return static_cast<float>(std::atan2(m01, m10));
}

GrayImage box_blur5(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            float acc = 0;
            for (int dy = -2; dy <= 2; ++dy)
                for (int dx = -2; dx <= 2; ++dx) {
                    const int sx = std::clamp(x + dx, 0, img.width - 1);
                    const int sy = std::clamp(y + dy, 0, img.height - 1);
                    acc += img.at(sx, sy);
                }
            out.at(x, y) = acc / 25.0f;
        }
    return out;
}

Descriptor describe_on(const GrayImage& smoothed, const Keypoint& kp) {
    const int cx = static_cast<int>(std::lround(kp.x));
    const int cy = static_cast<int>(std::lround(kp.y));
    const float c = std::cos(kp.orientation), s = std::sin(kp.orientation);
    Descriptor d;
    for (int i = 0; i < 256; ++i) {
        const int* p = kBriefPattern[i];
        const int ax = cx + static_cast<int>(std::lround(c * p[0] - s * p[1]));
        const int ay = cy + static_cast<int>(std::lround(s * p[0] + c * p[1]));
        const int bx = cx + static_cast<int>(std::lround(c * p[2] - s * p[3]));
        const int by = cy + static_cast<int>(std::lround(s * p[2] + c * p[3]));
        const float a = smoothed.at(std::clamp(ax, 0, smoothed.width - 1),
                                    std::clamp(ay, 0, smoothed.height - 1));
        const float b = smoothed.at(std::clamp(bx, 0, smoothed.width - 1),
                                    std::clamp(by, 0, smoothed.height - 1));
        if (a < b) d.bits[i >> 6] |= uint64_t{1} << (i & 63);
    }
    return d;
}

}  // namespace

std::vector<Keypoint> detect_keypoints(const GrayImage& img, const DetectorConfig& cfg) {
    if (img.width < 48 || img.height < 48)
        throw std::invalid_argument("detect_keypoints: image must be at least 48x48");
    const int m = std::max(cfg.margin, 4);

    std::vector<float> response(static_cast<size_t>(img.width) * img.height,
                                -std::numeric_limits<float>::infinity());
    std::vector<std::pair<int, int>> corners;
    for (int y = m; y < img.height - m; ++y)
        for (int x = m; x < img.width - m; ++x)
            if (fast9_corner(img, x, y, cfg.fast_threshold)) {
                response[static_cast<size_t>(y) * img.width + x] = harris_response(img, x, y);
                corners.emplace_back(x, y);
            }

    // 3x3 non-max suppression on the Harris score, ties to the first in
    // row-major order
    std::vector<Keypoint> kps;
    for (auto [x, y] : corners) {
        const float r = response[static_cast<size_t>(y) * img.width + x];
        bool is_max = true;
        for (int dy = -1; dy <= 1 && is_max; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const float rn = response[static_cast<size_t>(y + dy) * img.width + (x + dx)];
                if (rn > r || (rn == r && (dy < 0 || (dy == 0 && dx < 0)))) {
                    is_max = false;
                    break;
                }
            }
        if (!is_max) continue;
        Keypoint kp;
        kp.x = static_cast<float>(x);
        kp.y = static_cast<float>(y);
        kp.response = r;
        kp.orientation = centroid_orientation(img, x, y);
        kps.push_back(kp);
    }

    std::stable_sort(kps.begin(), kps.end(),
                     [](const Keypoint& a, const Keypoint& b) { return a.response > b.response; });
    if (static_cast<int>(kps.size()) > cfg.max_keypoints) kps.resize(cfg.max_keypoints);
    return kps;
}

std::vector<Descriptor> describe_keypoints(const GrayImage& img, const std::vector<Keypoint>& kps) {
    const GrayImage smoothed = box_blur5(img);
    std::vector<Descriptor> out;
    out.reserve(kps.size());
    for (const Keypoint& kp : kps) {
        if (kp.x < 0 || kp.x >= img.width || kp.y < 0 || kp.y >= img.height)
            throw std::invalid_argument("describe: keypoint outside image");
        out.push_back(describe_on(smoothed, kp));
    }
    return out;
}

Descriptor describe(const GrayImage& img, const Keypoint& kp) {
    return describe_keypoints(img, {kp}).front();
}

int hamming_distance(const Descriptor& a, const Descriptor& b) {
    int d = 0;
    for (int i = 0; i < 4; ++i) d += std::popcount(a.bits[i] ^ b.bits[i]);
    return d;
}

std::vector<Match> match_descriptors(const std::vector<Descriptor>& a, const std::vector<Descriptor>& b,
                                     int max_distance) {
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    std::vector<int> best_for_a(na, -1), best_for_b(nb, -1);
    std::vector<int> dist_a(na, 257), dist_b(nb, 257);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            const int d = hamming_distance(a[i], b[j]);
            if (d < dist_a[i]) {
                dist_a[i] = d;
                best_for_a[i] = j;
            }
            if (d < dist_b[j]) {
                dist_b[j] = d;
                best_for_b[j] = i;
            }
        }
    std::vector<Match> out;
    for (int i = 0; i < na; ++i) {
        const int j = best_for_a[i];
        if (j >= 0 && best_for_b[j] == i && dist_a[i] <= max_distance)
            out.push_back({i, j, dist_a[i]});
    }
    return out;
}

}  // namespace crbridge
