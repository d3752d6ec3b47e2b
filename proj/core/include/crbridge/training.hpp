#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crbridge/canny.hpp"
#include "crbridge/generator.hpp"
#include "crbridge/image.hpp"
#include "crbridge/optimizer.hpp"
#include "crbridge/pipeline.hpp"

namespace crbridge {

enum class ArchitectureKind { DoubleSiamese, CommonEdges };

struct TrainConfig {
    ArchitectureKind architecture = ArchitectureKind::DoubleSiamese;
    double learning_rate = 1e-3;
    int batch_size = 8;
    int steps = 500;
    double p_similar = 0.5;
    int window_k = 3;
    int width = 320;
    int height = 160;
    OptimizerKind optimizer = OptimizerKind::Adam;
    uint64_t seed = 0;
    int checkpoint_every = 100;
    std::vector<int> encoder_channels{16, 32, 64, 128};
    int kernel_size = 3;
    CannyConfig canny;
    bool similarity_polarity = false;

    void validate() const;
    GeneratorConfig generator_config(uint64_t seed_offset) const;
};

struct TrainError : std::runtime_error {
    int step;
    TrainError(int s, const std::string& msg) : std::runtime_error(msg), step(s) {}
};

// Drives both generators over a fixed in-memory dataset. Deterministic for a
// given config and dataset; full state round-trips through serialize_state()
// so a resumed run reproduces the uninterrupted loss trajectory bit-exactly.
class Trainer {
public:
    Trainer(TrainConfig cfg, std::vector<FramePair> dataset);

    // One batch: forward passes, one backward, one optimizer step per
    // generator. Returns the mean batch loss.
    float train_step();

    using CheckpointFn = std::function<void(int step, const GeneratorWeights<float>& image,
                                            const GeneratorWeights<float>& depth)>;
    // Runs until cfg.steps, invoking the callback every checkpoint_every
    // steps and after the final step.
    void run(const CheckpointFn& on_checkpoint = nullptr);

    int step() const { return step_; }
    const std::vector<float>& loss_history() const { return loss_history_; }
    const GeneratorWeights<float>& image_weights() const { return image_w_; }
    const GeneratorWeights<float>& depth_weights() const { return depth_w_; }
    const TrainConfig& config() const { return cfg_; }

    std::vector<uint8_t> serialize_state() const;
    void restore_state(const std::vector<uint8_t>& blob);

private:
    TrainConfig cfg_;
    std::vector<FramePair> dataset_;
    GeneratorWeights<float> image_w_, depth_w_;
    OptimizerState<float> image_opt_, depth_opt_;
    SiamesePairSampler sampler_;
    std::vector<std::optional<GrayImage>> edge_cache_;
    int step_ = 0;
    std::vector<float> loss_history_;

    const GrayImage& edge_image(int frame);
    float siamese_step();
    float edges_step();
};

}  // namespace crbridge
