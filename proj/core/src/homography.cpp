#include "crbridge/homography.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <stdexcept>

namespace crbridge {

std::array<double, 2> Homography::apply(double x, double y) const {
    const double w = h[6] * x + h[7] * y + h[8];
    return {(h[0] * x + h[1] * y + h[2]) / w, (h[3] * x + h[4] * y + h[5]) / w};
}

double Homography::det() const {
    return h[0] * (h[4] * h[8] - h[5] * h[7]) - h[1] * (h[3] * h[8] - h[5] * h[6]) +
           h[2] * (h[3] * h[7] - h[4] * h[6]);
}

Homography Homography::inverse() const {
    Eigen::Matrix3d m;
    m << h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8];
    const Eigen::Matrix3d inv = m.inverse();
    Homography out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out.h[r * 3 + c] = inv(r, c) / inv(2, 2);
    return out;
}

namespace {

struct Normalization {
    double cx, cy, scale;
    std::array<double, 2> apply(const std::array<double, 2>& p) const {
        return {(p[0] - cx) * scale, (p[1] - cy) * scale};
    }
};

Normalization hartley(const std::vector<std::array<double, 2>>& pts) {
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p[0];
        cy += p[1];
    }
    cx /= pts.size();
    cy /= pts.size();
    double mean_dist = 0;
    for (const auto& p : pts) mean_dist += std::hypot(p[0] - cx, p[1] - cy);
    mean_dist /= pts.size();
    const double scale = mean_dist > 1e-12 ? std::sqrt(2.0) / mean_dist : 1.0;
    return {cx, cy, scale};
}

bool any_three_collinear(const std::array<std::array<double, 2>, 4>& p) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) {
                const double area = (p[j][0] - p[i][0]) * (p[k][1] - p[i][1]) -
                                    (p[j][1] - p[i][1]) * (p[k][0] - p[i][0]);
                if (std::abs(area) < 1e-9) return true;
            }
    return false;
}

}  // namespace

Homography fit_homography_dlt(const std::vector<std::array<double, 2>>& a,
                              const std::vector<std::array<double, 2>>& b) {
    if (a.size() != b.size() || a.size() < 4)
        throw std::invalid_argument("homography: need >= 4 correspondences");
    const Normalization na = hartley(a), nb = hartley(b);

    const int n = static_cast<int>(a.size());
    Eigen::MatrixXd A(2 * n, 9);
    for (int i = 0; i < n; ++i) {
        const auto [x, y] = na.apply(a[i]);
        const auto [u, v] = nb.apply(b[i]);
        A.row(2 * i) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
        A.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    // a rank below 8 leaves the solution ambiguous (collinear configurations)
    const auto& sv = svd.singularValues();
    if (sv(7) < 1e-8 * sv(0)) throw std::runtime_error("homography: degenerate configuration");
    const Eigen::VectorXd hvec = svd.matrixV().col(8);

    Eigen::Matrix3d Hn;
    Hn << hvec(0), hvec(1), hvec(2), hvec(3), hvec(4), hvec(5), hvec(6), hvec(7), hvec(8);
    // denormalize: H = Tb^-1 * Hn * Ta
    Eigen::Matrix3d Ta, Tb;
    Ta << na.scale, 0, -na.scale * na.cx, 0, na.scale, -na.scale * na.cy, 0, 0, 1;
    Tb << nb.scale, 0, -nb.scale * nb.cx, 0, nb.scale, -nb.scale * nb.cy, 0, 0, 1;
    Eigen::Matrix3d H = Tb.inverse() * Hn * Ta;
    if (std::abs(H(2, 2)) < 1e-15 || std::abs(H.determinant()) < 1e-12)
        throw std::runtime_error("homography: degenerate solution");
    H /= H(2, 2);

    Homography out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out.h[r * 3 + c] = H(r, c);
    return out;
}

double symmetric_transfer_error(const Homography& h, const std::array<double, 2>& pa,
                                const std::array<double, 2>& pb) {
    const auto fwd = h.apply(pa[0], pa[1]);
    const auto bwd = h.inverse().apply(pb[0], pb[1]);
    return 0.5 * (std::hypot(fwd[0] - pb[0], fwd[1] - pb[1]) +
                  std::hypot(bwd[0] - pa[0], bwd[1] - pa[1]));
}

RansacResult estimate_homography_ransac(const std::vector<Match>& matches,
                                        const std::vector<Keypoint>& kps_a,
                                        const std::vector<Keypoint>& kps_b,
                                        const RansacConfig& cfg) {
    const int n = static_cast<int>(matches.size());
    if (n < 4) throw std::invalid_argument("homography: insufficient correspondences");

    std::vector<std::array<double, 2>> pa(n), pb(n);
    for (int i = 0; i < n; ++i) {
        pa[i] = {kps_a[matches[i].index_a].x, kps_a[matches[i].index_a].y};
        pb[i] = {kps_b[matches[i].index_b].x, kps_b[matches[i].index_b].y};
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> best_inliers;
    Homography best_h;
    bool have_model = false;

    for (int it = 0; it < cfg.iterations; ++it) {
        int idx[4];
        idx[0] = pick(rng);
        for (int k = 1; k < 4; ++k) {
            bool dup;
            do {
                idx[k] = pick(rng);
                dup = false;
                for (int j = 0; j < k; ++j) dup = dup || idx[j] == idx[k];
            } while (dup);
        }
        std::array<std::array<double, 2>, 4> sa{pa[idx[0]], pa[idx[1]], pa[idx[2]], pa[idx[3]]};
        std::array<std::array<double, 2>, 4> sb{pb[idx[0]], pb[idx[1]], pb[idx[2]], pb[idx[3]]};
        if (any_three_collinear(sa) || any_three_collinear(sb)) continue;

        Homography h;
        try {
            h = fit_homography_dlt({sa.begin(), sa.end()}, {sb.begin(), sb.end()});
        } catch (const std::runtime_error&) {
            continue;
        }

        const Homography hinv = h.inverse();
        std::vector<int> inliers;
        for (int i = 0; i < n; ++i) {
            const auto fwd = h.apply(pa[i][0], pa[i][1]);
            const auto bwd = hinv.apply(pb[i][0], pb[i][1]);
            const double err = 0.5 * (std::hypot(fwd[0] - pb[i][0], fwd[1] - pb[i][1]) +
                                      std::hypot(bwd[0] - pa[i][0], bwd[1] - pa[i][1]));
            if (err < cfg.inlier_px) inliers.push_back(i);
        }
        if (inliers.size() > best_inliers.size()) {
            best_inliers = std::move(inliers);
            best_h = h;
            have_model = true;
        }
    }
    if (!have_model || best_inliers.size() < 4)
        throw std::runtime_error("homography: no consensus model found");

    // refit on all inliers
    std::vector<std::array<double, 2>> ia, ib;
    for (int i : best_inliers) {
        ia.push_back(pa[i]);
        ib.push_back(pb[i]);
    }
    Homography refit = best_h;
    try {
        refit = fit_homography_dlt(ia, ib);
    } catch (const std::runtime_error&) {
        // keep the minimal-sample model
    }
    const Homography rinv = refit.inverse();
    std::vector<int> final_inliers;
    for (int i = 0; i < n; ++i) {
        const auto fwd = refit.apply(pa[i][0], pa[i][1]);
        const auto bwd = rinv.apply(pb[i][0], pb[i][1]);
        const double err = 0.5 * (std::hypot(fwd[0] - pb[i][0], fwd[1] - pb[i][1]) +
                                  std::hypot(bwd[0] - pa[i][0], bwd[1] - pa[i][1]));
        if (err < cfg.inlier_px) final_inliers.push_back(i);
    }
    if (final_inliers.size() < best_inliers.size()) {
        // refit lost consensus; fall back to the minimal-sample model
        return {best_h, best_inliers};
    }
    return {refit, final_inliers};
}

double reprojection_error(const Homography& h, const std::vector<int>& inliers,
                          const std::vector<Match>& matches, const std::vector<Keypoint>& kps_a,
                          const std::vector<Keypoint>& kps_b) {
    if (inliers.empty()) throw std::invalid_argument("reprojection_error: no inliers");
    const Homography hinv = h.inverse();
    double sum = 0;
    for (int i : inliers) {
        const Keypoint& a = kps_a[matches[i].index_a];
        const Keypoint& b = kps_b[matches[i].index_b];
        const auto fwd = h.apply(a.x, a.y);
        const auto bwd = hinv.apply(b.x, b.y);
        sum += 0.5 * (std::hypot(fwd[0] - b.x, fwd[1] - b.y) + std::hypot(bwd[0] - a.x, bwd[1] - a.y));
    }
    return sum / static_cast<double>(inliers.size());
}

}  // namespace crbridge
