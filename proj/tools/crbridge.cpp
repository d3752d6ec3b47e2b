#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "crbridge/canny.hpp"
#include "crbridge/checkpoint.hpp"
#include "crbridge/config.hpp"
#include "crbridge/dataset_io.hpp"
#include "crbridge/eval.hpp"
#include "crbridge/pgm_io.hpp"
#include "crbridge/synthetic.hpp"
#include "crbridge/training.hpp"

namespace fs = std::filesystem;
using namespace crbridge;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCorrupt = 4;

std::string format_loss(float v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
    return buf;
}

void write_loss_csv(const std::string& path, const std::vector<float>& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "step,loss\n";
    for (size_t i = 0; i < history.size(); ++i)
        out << (i + 1) << "," << format_loss(history[i]) << "\n";
}

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_generate_data(uint64_t seed, int frames, const std::string& out_dir, int width, int height,
                      double speed, double blur_sigma, double contrast) {
    const CameraIntrinsics intr = default_intrinsics(width, height);
    SyntheticOptions opt;
    opt.speed = speed;
    opt.blur_sigma = blur_sigma;
    opt.contrast = contrast;
    std::vector<FramePair> seq;
    if (frames > 0) seq = generate_sequence(seed, frames, intr, opt);
    DatasetManifest manifest;
    manifest.seed = seed;
    manifest.num_frames = frames;
    manifest.max_range = opt.max_range;
    manifest.intrinsics = intr;
    save_dataset(out_dir, seq, manifest);
    std::cout << "wrote " << frames << " frames to " << out_dir << "\n";
    return 0;
}

int cmd_train(const std::string& config_path, const std::string& data_dir, const std::string& out_dir,
              bool resume) {
    const RunConfig cfg = load_run_config(config_path);
    const LoadedDataset ds = load_dataset(data_dir);
    fs::create_directories(out_dir);

    Trainer trainer(cfg.train, ds.frames);
    const std::string state_path = (fs::path(out_dir) / "resume.state").string();
    if (resume) trainer.restore_state(read_file(state_path));

    auto save_all = [&](int step, const GeneratorWeights<float>& img, const GeneratorWeights<float>& dep) {
        char tag[16];
        std::snprintf(tag, sizeof(tag), "%06d", step);
        save_checkpoint((fs::path(out_dir) / ("image_" + std::string(tag) + ".ckpt")).string(), img,
                        GeneratorRole::Image);
        save_checkpoint((fs::path(out_dir) / ("depth_" + std::string(tag) + ".ckpt")).string(), dep,
                        GeneratorRole::Depth);
        const std::vector<uint8_t> blob = trainer.serialize_state();
        std::ofstream out(state_path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
    };
    trainer.run(save_all);

    save_checkpoint((fs::path(out_dir) / "image_final.ckpt").string(), trainer.image_weights(),
                    GeneratorRole::Image);
    save_checkpoint((fs::path(out_dir) / "depth_final.ckpt").string(), trainer.depth_weights(),
                    GeneratorRole::Depth);
    write_loss_csv((fs::path(out_dir) / "loss.csv").string(), trainer.loss_history());
    std::cout << "trained " << trainer.step() << " steps\n";
    return 0;
}

int cmd_infer(const std::string& checkpoint_path, const std::string& input_path,
              const std::string& output_path, const std::string& kind) {
    GeneratorRole role;
    const GeneratorWeights<float> w = load_checkpoint(checkpoint_path, &role);
    const GeneratorRole wanted = kind == "depth" ? GeneratorRole::Depth : GeneratorRole::Image;
    if (role != wanted)
        throw ConfigError("checkpoint role does not match --kind " + kind);
    GrayImage input = read_pgm8(input_path);
    if (input.width != w.config.input_width || input.height != w.config.input_height)
        input = resize_bilinear(input, w.config.input_width, w.config.input_height);
    write_pgm8(output_path, generator_infer(w, input));
    return 0;
}

double read_baseline_distance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open baseline report " + path);
    std::string line;
    std::getline(in, line);  // header
    if (!std::getline(in, line)) throw ConfigError("baseline report has no rows: " + path);
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // condition
    std::getline(row, field, ',');
    return std::stod(field);
}

int cmd_eval(const std::string& config_path, const std::string& data_dir, int pairs,
             const std::string& mode, const std::string& ckpt_image, const std::string& ckpt_depth,
             const std::string& baseline_path, const std::string& out_path) {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (pairs > 0) cfg.eval.n_pairs = pairs;

    EvalTransform transform;
    if (mode == "raw")
        transform = EvalTransform::RawImage;
    else if (mode == "image_cr")
        transform = EvalTransform::ImageCr;
    else if (mode == "depth_cr")
        transform = EvalTransform::DepthCr;
    else if (mode == "cross_cr")
        transform = EvalTransform::CrossCr;
    else
        throw ConfigError("mode must be raw, image_cr, depth_cr or cross_cr");

    const bool needs_image = transform == EvalTransform::ImageCr || transform == EvalTransform::CrossCr;
    const bool needs_depth = transform == EvalTransform::DepthCr || transform == EvalTransform::CrossCr;
    if (needs_image && ckpt_image.empty()) throw ConfigError("mode " + mode + " needs --checkpoint-image");
    if (needs_depth && ckpt_depth.empty()) throw ConfigError("mode " + mode + " needs --checkpoint-depth");

    GeneratorWeights<float> image_w, depth_w;
    if (needs_image) image_w = load_checkpoint(ckpt_image);
    if (needs_depth) depth_w = load_checkpoint(ckpt_depth);

    LoadedDataset ds = load_dataset(data_dir);
    if (needs_image || needs_depth) {
        // CR generators run at their training resolution
        const GeneratorConfig& g = needs_image ? image_w.config : depth_w.config;
        for (FramePair& f : ds.frames) {
            f.gray = resize_bilinear(f.gray, g.input_width, g.input_height);
            f.depth_gray = resize_bilinear(f.depth_gray, g.input_width, g.input_height);
        }
    }

    EvalReport baseline;
    const EvalReport* baseline_ptr = nullptr;
    if (!baseline_path.empty()) {
        baseline.avg_distance_raw = read_baseline_distance(baseline_path);
        baseline_ptr = &baseline;
    }
    const EvalReport report =
        evaluate_pairs(ds.frames, transform, needs_image ? &image_w : nullptr,
                       needs_depth ? &depth_w : nullptr, cfg.eval, baseline_ptr);
    write_report_csv(out_path, {{mode, report}});
    std::cout << mode << ": dist=" << report.avg_distance_raw << " matches=" << report.avg_matches
              << " reproj=" << report.avg_reprojection_px << "px pairs=" << report.pairs_evaluated
              << " dropped=" << report.dropped_pairs << "\n";
    return 0;
}

int cmd_edges(const std::string& input_path, const std::string& output_path, double low, double high,
              double sigma) {
    CannyConfig cfg;
    cfg.low_threshold = low;
    cfg.high_threshold = high;
    cfg.gaussian_sigma = sigma;
    cfg.validate();
    write_pgm8(output_path, canny(read_pgm8(input_path), cfg));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"camera/LiDAR common-representation training and evaluation"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    int frames = 100, width = 320, height = 160, pairs = 0;
    std::string out_dir, data_dir, config_path, checkpoint_path, input_path, output_path;
    std::string kind = "image", mode = "raw", ckpt_image, ckpt_depth, baseline_path;
    std::string report_path = "report.csv";
    double low = 0.05, high = 0.15, sigma = 1.4;
    bool resume = false;

    auto* gen = app.add_subcommand("generate-data", "render a synthetic paired dataset");
    gen->add_option("--seed", seed);
    gen->add_option("--frames", frames);
    gen->add_option("--out-dir", out_dir)->required();
    gen->add_option("--width", width);
    gen->add_option("--height", height);
    double speed = 0.25, blur_sigma = 0.0, contrast = 1.0;
    gen->add_option("--speed", speed, "forward meters per frame");
    gen->add_option("--blur-sigma", blur_sigma, "camera defocus blur (0 = sharp)");
    gen->add_option("--contrast", contrast, "gray contrast scale about 0.5");

    auto* train = app.add_subcommand("train", "train CR generators");
    train->add_option("--config", config_path)->required();
    train->add_option("--data-dir", data_dir)->required();
    train->add_option("--out-dir", out_dir)->required();
    train->add_flag("--resume", resume, "continue from <out-dir>/resume.state");

    auto* infer = app.add_subcommand("infer", "run a CR generator on one image");
    infer->add_option("--checkpoint", checkpoint_path)->required();
    infer->add_option("--input", input_path)->required();
    infer->add_option("--output", output_path)->required();
    infer->add_option("--kind", kind)->check(CLI::IsMember({"image", "depth"}));

    auto* eval = app.add_subcommand("eval", "feature-matching evaluation over frame pairs");
    eval->add_option("--config", config_path);
    eval->add_option("--data-dir", data_dir)->required();
    eval->add_option("--pairs", pairs);
    eval->add_option("--mode", mode)->check(CLI::IsMember({"raw", "image_cr", "depth_cr", "cross_cr"}));
    eval->add_option("--checkpoint-image", ckpt_image);
    eval->add_option("--checkpoint-depth", ckpt_depth);
    eval->add_option("--baseline", baseline_path);
    eval->add_option("--out", report_path);

    auto* edges = app.add_subcommand("edges", "Canny edge image");
    edges->add_option("--input", input_path)->required();
    edges->add_option("--output", output_path)->required();
    edges->add_option("--low", low);
    edges->add_option("--high", high);
    edges->add_option("--sigma", sigma);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate_data(seed, frames, out_dir, width, height, speed, blur_sigma, contrast);
        if (train->parsed()) return cmd_train(config_path, data_dir, out_dir, resume);
        if (infer->parsed()) return cmd_infer(checkpoint_path, input_path, output_path, kind);
        if (eval->parsed())
            return cmd_eval(config_path, data_dir, pairs, mode, ckpt_image, ckpt_depth, baseline_path,
                            report_path);
        if (edges->parsed()) return cmd_edges(input_path, output_path, low, high, sigma);
    } catch (const CorruptCheckpoint& e) {
        std::cerr << "error: corrupt checkpoint: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const TrainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
