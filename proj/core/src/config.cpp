#include "crbridge/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

using nlohmann::json;

namespace crbridge {

namespace {

// Tracks consumed keys so leftovers can be reported with their paths.
struct Section {
    const json& j;
    std::string path;
    std::set<std::string> seen;

    Section(const json& obj, std::string p) : j(obj), path(std::move(p)) {
        if (!j.is_object()) throw ConfigError("config: " + path + " must be an object");
    }

    const json* find(const std::string& key) {
        seen.insert(key);
        auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }

    template <typename T>
    void get(const std::string& key, T& out) {
        if (const json* v = find(key)) {
            try {
                out = v->get<T>();
            } catch (const json::exception&) {
                throw ConfigError("config: bad value for " + path + key);
            }
        }
    }

    void finish(std::vector<std::string>& unknown) const {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!seen.count(it.key())) unknown.push_back(path + it.key());
    }
};

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    RunConfig cfg;
    std::vector<std::string> unknown;
    Section top(root, "");

    if (const json* jt = top.find("train")) {
        Section t(*jt, "train.");
        std::string arch = "double_siamese", opt = "adam";
        t.get("architecture", arch);
        if (arch == "double_siamese")
            cfg.train.architecture = ArchitectureKind::DoubleSiamese;
        else if (arch == "common_edges")
            cfg.train.architecture = ArchitectureKind::CommonEdges;
        else
            throw ConfigError("config: train.architecture must be double_siamese or common_edges");
        t.get("learning_rate", cfg.train.learning_rate);
        t.get("batch_size", cfg.train.batch_size);
        t.get("steps", cfg.train.steps);
        t.get("p_similar", cfg.train.p_similar);
        t.get("window_k", cfg.train.window_k);
        t.get("width", cfg.train.width);
        t.get("height", cfg.train.height);
        t.get("optimizer", opt);
        if (opt == "adam")
            cfg.train.optimizer = OptimizerKind::Adam;
        else if (opt == "sgd")
            cfg.train.optimizer = OptimizerKind::Sgd;
        else
            throw ConfigError("config: train.optimizer must be adam or sgd");
        t.get("seed", cfg.train.seed);
        t.get("checkpoint_every", cfg.train.checkpoint_every);
        t.get("encoder_channels", cfg.train.encoder_channels);
        t.get("kernel_size", cfg.train.kernel_size);
        t.get("similarity_polarity", cfg.train.similarity_polarity);
        t.finish(unknown);
    }
    if (const json* jc = top.find("canny")) {
        Section c(*jc, "canny.");
        c.get("sigma", cfg.train.canny.gaussian_sigma);
        c.get("low", cfg.train.canny.low_threshold);
        c.get("high", cfg.train.canny.high_threshold);
        c.finish(unknown);
    }
    if (const json* je = top.find("eval")) {
        Section e(*je, "eval.");
        e.get("pairs", cfg.eval.n_pairs);
        e.get("pair_offset", cfg.eval.pair_offset);
        e.get("max_keypoints", cfg.eval.detector.max_keypoints);
        e.get("fast_threshold", cfg.eval.detector.fast_threshold);
        e.get("match_max_distance", cfg.eval.match_max_distance);
        e.get("ransac_iterations", cfg.eval.ransac.iterations);
        e.get("ransac_inlier_px", cfg.eval.ransac.inlier_px);
        e.get("ransac_seed", cfg.eval.ransac.seed);
        e.finish(unknown);
    }
    top.finish(unknown);

    if (!unknown.empty()) {
        std::string msg = "config: unknown keys:";
        for (const std::string& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
    cfg.train.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_run_config(text);
}

}  // namespace crbridge
