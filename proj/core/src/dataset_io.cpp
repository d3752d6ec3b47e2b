#include "crbridge/dataset_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "crbridge/pgm_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace crbridge {

namespace {

std::string frame_stem(int index) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%06d", index);
    return buf;
}

}  // namespace

void save_dataset(const std::string& dir, const std::vector<FramePair>& frames,
                  const DatasetManifest& manifest) {
    fs::create_directories(fs::path(dir) / "frames");
    for (const FramePair& f : frames) {
        const std::string stem = frame_stem(f.index);
        write_pgm8((fs::path(dir) / "frames" / (stem + ".gray.pgm")).string(), f.gray);
        // stored as millimeters; depth_gray is the [0,1] normalization
        DepthImage depth(f.depth_gray.width, f.depth_gray.height);
        for (size_t i = 0; i < depth.depths.size(); ++i)
            depth.depths[i] = f.depth_gray.pixels[i] * static_cast<float>(manifest.max_range);
        write_depth_pgm16((fs::path(dir) / "frames" / (stem + ".depth.pgm")).string(), depth);
    }
    json j;
    j["seed"] = manifest.seed;
    j["num_frames"] = manifest.num_frames;
    j["max_range"] = manifest.max_range;
    j["intrinsics"] = {{"fx", manifest.intrinsics.fx}, {"fy", manifest.intrinsics.fy},
                       {"cx", manifest.intrinsics.cx}, {"cy", manifest.intrinsics.cy},
                       {"width", manifest.intrinsics.width}, {"height", manifest.intrinsics.height}};
    std::ofstream out(fs::path(dir) / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest in " + dir);
    out << j.dump(2) << "\n";
}

LoadedDataset load_dataset(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw std::runtime_error("missing manifest.json in " + dir);
    json j = json::parse(in);

    LoadedDataset ds;
    ds.manifest.seed = j.at("seed").get<uint64_t>();
    ds.manifest.num_frames = j.at("num_frames").get<int>();
    ds.manifest.max_range = j.at("max_range").get<double>();
    const json& ji = j.at("intrinsics");
    ds.manifest.intrinsics.fx = ji.at("fx").get<double>();
    ds.manifest.intrinsics.fy = ji.at("fy").get<double>();
    ds.manifest.intrinsics.cx = ji.at("cx").get<double>();
    ds.manifest.intrinsics.cy = ji.at("cy").get<double>();
    ds.manifest.intrinsics.width = ji.at("width").get<int>();
    ds.manifest.intrinsics.height = ji.at("height").get<int>();

    for (int i = 0; i < ds.manifest.num_frames; ++i) {
        const std::string stem = frame_stem(i);
        FramePair f;
        f.index = i;
        f.gray = read_pgm8((fs::path(dir) / "frames" / (stem + ".gray.pgm")).string());
        const DepthImage depth =
            read_depth_pgm16((fs::path(dir) / "frames" / (stem + ".depth.pgm")).string());
        f.depth_gray = normalize_depth(depth, ds.manifest.max_range);
        ds.frames.push_back(std::move(f));
    }
    return ds;
}

}  // namespace crbridge
