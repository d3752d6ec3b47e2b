#include "crbridge/eval.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "crbridge/threading.hpp"

namespace crbridge {

namespace {

struct PairStats {
    bool dropped = true;
    double distance = 0;
    int matches = 0;
    double reprojection = 0;
};

struct FrameFeatures {
    std::vector<Keypoint> kps;
    std::vector<Descriptor> descs;
};

GrayImage transformed(const FramePair& f, EvalTransform t, bool side_b,
                      const GeneratorWeights<float>* image_w, const GeneratorWeights<float>* depth_w) {
    switch (t) {
        case EvalTransform::RawImage:
            return f.gray;
        case EvalTransform::ImageCr:
            return generator_infer(*image_w, f.gray);
        case EvalTransform::DepthCr:
            return generator_infer(*depth_w, f.depth_gray);
        case EvalTransform::CrossCr:
            return side_b ? generator_infer(*depth_w, f.depth_gray) : generator_infer(*image_w, f.gray);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

const char* transform_name(EvalTransform t) {
    switch (t) {
        case EvalTransform::RawImage: return "raw";
        case EvalTransform::ImageCr: return "image_cr";
        case EvalTransform::DepthCr: return "depth_cr";
        case EvalTransform::CrossCr: return "cross_cr";
    }
    return "?";
}

EvalReport evaluate_pairs(const std::vector<FramePair>& frames, EvalTransform transform,
                          const GeneratorWeights<float>* image_weights,
                          const GeneratorWeights<float>* depth_weights, const EvalConfig& cfg,
                          const EvalReport* baseline) {
    if (cfg.n_pairs < 1) throw std::invalid_argument("eval: n_pairs must be >= 1");
    if (cfg.pair_offset < 0) throw std::invalid_argument("eval: pair_offset must be >= 0");
    const int needed = cfg.n_pairs - 1 + cfg.pair_offset + 1;
    if (static_cast<int>(frames.size()) < needed)
        throw std::invalid_argument("eval: need at least " + std::to_string(needed) + " frames, have " +
                                    std::to_string(frames.size()));
    const bool needs_image = transform == EvalTransform::ImageCr || transform == EvalTransform::CrossCr;
    const bool needs_depth = transform == EvalTransform::DepthCr || transform == EvalTransform::CrossCr;
    if ((needs_image && !image_weights) || (needs_depth && !depth_weights))
        throw std::invalid_argument("eval: CR transform selected without generator weights");

    const int n_frames = cfg.n_pairs + cfg.pair_offset;
    const bool two_sided = transform == EvalTransform::CrossCr;

    std::vector<FrameFeatures> side_a(n_frames), side_b(two_sided ? n_frames : 0);
    parallel_for(n_frames, [&](int i) {
        GrayImage img = transformed(frames[i], transform, false, image_weights, depth_weights);
        side_a[i].kps = detect_keypoints(img, cfg.detector);
        side_a[i].descs = describe_keypoints(img, side_a[i].kps);
        if (two_sided) {
            GrayImage imgb = transformed(frames[i], transform, true, image_weights, depth_weights);
            side_b[i].kps = detect_keypoints(imgb, cfg.detector);
            side_b[i].descs = describe_keypoints(imgb, side_b[i].kps);
        }
    });

    std::vector<PairStats> stats(cfg.n_pairs);
    parallel_for(cfg.n_pairs, [&](int p) {
        const FrameFeatures& fa = side_a[p];
        const FrameFeatures& fb = two_sided ? side_b[p + cfg.pair_offset] : side_a[p + cfg.pair_offset];
        PairStats& s = stats[p];
        const std::vector<Match> matches = match_descriptors(fa.descs, fb.descs, cfg.match_max_distance);
        if (matches.size() < 4) return;
        RansacResult rr;
        try {
            rr = estimate_homography_ransac(matches, fa.kps, fb.kps, cfg.ransac);
        } catch (const std::runtime_error&) {
            return;
        }
        double dist = 0;
        for (const Match& m : matches) dist += m.distance;
        s.dropped = false;
        s.distance = dist / static_cast<double>(matches.size());
        s.matches = static_cast<int>(matches.size());
        s.reprojection = reprojection_error(rr.h, rr.inliers, matches, fa.kps, fb.kps);
    });

    EvalReport report;
    for (const PairStats& s : stats) {
        if (s.dropped) {
            ++report.dropped_pairs;
            continue;
        }
        report.avg_distance_raw += s.distance;
        report.avg_matches += s.matches;
        report.avg_reprojection_px += s.reprojection;
        ++report.pairs_evaluated;
    }
    if (report.pairs_evaluated > 0) {
        report.avg_distance_raw /= report.pairs_evaluated;
        report.avg_matches /= report.pairs_evaluated;
        report.avg_reprojection_px /= report.pairs_evaluated;
    }
    if (baseline && baseline->avg_distance_raw > 0)
        report.avg_distance_normalized = report.avg_distance_raw / baseline->avg_distance_raw;
    return report;
}

namespace {

// shortest representation that parses back to the same double
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

}  // namespace

void write_report_csv(const std::string& path,
                      const std::vector<std::pair<std::string, EvalReport>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "condition,avg_distance_raw,avg_distance_normalized,avg_matches,avg_reprojection_px,pairs,dropped\n";
    for (const auto& [name, r] : rows)
        out << name << "," << fmt(r.avg_distance_raw) << "," << fmt(r.avg_distance_normalized) << ","
            << fmt(r.avg_matches) << "," << fmt(r.avg_reprojection_px) << "," << r.pairs_evaluated << ","
            << r.dropped_pairs << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace crbridge
