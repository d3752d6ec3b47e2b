#include "crbridge/training.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "crbridge/checkpoint.hpp"
#include "crbridge/losses.hpp"

namespace crbridge {

void TrainConfig::validate() const {
    if (learning_rate < 0) throw std::invalid_argument("train: learning_rate must be >= 0");
    if (batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
    if (steps < 0) throw std::invalid_argument("train: steps must be >= 0");
    if (p_similar < 0 || p_similar > 1) throw std::invalid_argument("train: p_similar must be in [0,1]");
    if (window_k < 1) throw std::invalid_argument("train: window_k must be >= 1");
    if (checkpoint_every < 1) throw std::invalid_argument("train: checkpoint_every must be >= 1");
    generator_config(0);  // throws on indivisible resolution
    canny.validate();
}

GeneratorConfig TrainConfig::generator_config(uint64_t seed_offset) const {
    GeneratorConfig g;
    g.input_width = width;
    g.input_height = height;
    g.encoder_channels = encoder_channels;
    g.kernel_size = kernel_size;
    g.seed = seed + seed_offset;
    return g;
}

namespace {

std::vector<FramePair> fit_resolution(std::vector<FramePair> ds, int w, int h) {
    for (FramePair& f : ds) {
        if (f.gray.width != w || f.gray.height != h) f.gray = resize_bilinear(f.gray, w, h);
        if (f.depth_gray.width != w || f.depth_gray.height != h)
            f.depth_gray = resize_bilinear(f.depth_gray, w, h);
    }
    return ds;
}

SamplerConfig sampler_config(const TrainConfig& cfg) {
    SamplerConfig s;
    s.p_similar = cfg.p_similar;
    s.window_k = cfg.window_k;
    s.seed = cfg.seed;
    s.similarity_polarity = cfg.similarity_polarity;
    return s;
}

struct GradientRefs {
    std::vector<Tensor<float>*> params;
    std::vector<const std::vector<float>*> grads;
};

GradientRefs collect(Tape<float>& tape, GeneratorWeights<float>& w) {
    GradientRefs r;
    for (auto& l : w.layers) {
        r.params.push_back(&l.kernel);
        r.grads.push_back(&tape.grad(l.kernel));
        r.params.push_back(&l.bias);
        r.grads.push_back(&tape.grad(l.bias));
    }
    return r;
}

}  // namespace

Trainer::Trainer(TrainConfig cfg, std::vector<FramePair> dataset)
    : cfg_(std::move(cfg)),
      dataset_(fit_resolution(std::move(dataset), cfg_.width, cfg_.height)),
      sampler_(sampler_config(cfg_)) {
    cfg_.validate();
    if (static_cast<int>(dataset_.size()) <= 2 * cfg_.window_k)
        throw std::invalid_argument("train: dataset must hold more than 2*window_k frames");
    image_w_ = build_generator<float>(cfg_.generator_config(1));
    depth_w_ = build_generator<float>(cfg_.generator_config(2));
    image_opt_.kind = depth_opt_.kind = cfg_.optimizer;
    image_opt_.learning_rate = depth_opt_.learning_rate = static_cast<float>(cfg_.learning_rate);
    edge_cache_.resize(dataset_.size());
}

const GrayImage& Trainer::edge_image(int frame) {
    auto& slot = edge_cache_[frame];
    if (!slot) slot = canny(dataset_[frame].gray, cfg_.canny);
    return *slot;
}

float Trainer::siamese_step() {
    Tape<float> tape;
    detach_parameters(image_w_);
    detach_parameters(depth_w_);
    watch_parameters(tape, image_w_);
    watch_parameters(tape, depth_w_);

    Tensor<float> total = Tensor<float>::scalar(0.0f);
    bool first = true;
    for (int b = 0; b < cfg_.batch_size; ++b) {
        const SiameseSample s = sampler_.sample(dataset_);
        const Tensor<float> g1 = tensor_from_image<float>(dataset_[s.index1].gray);
        const Tensor<float> g2 = tensor_from_image<float>(dataset_[s.index2].gray);
        const Tensor<float> d1 = tensor_from_image<float>(dataset_[s.index1].depth_gray);
        const Tensor<float> d2 = tensor_from_image<float>(dataset_[s.index2].depth_gray);
        const Tensor<float> k11 = generator_forward(tape, image_w_, g1);
        const Tensor<float> k12 = generator_forward(tape, image_w_, g2);
        const Tensor<float> k21 = generator_forward(tape, depth_w_, d1);
        const Tensor<float> k22 = generator_forward(tape, depth_w_, d2);
        Tensor<float> item = double_siamese_loss(tape, k11, k12, k21, k22, s.delta_cheb);
        total = first ? item : tape.add(total, item);
        first = false;
    }
    Tensor<float> mean_loss = tape.scale(total, 1.0f / static_cast<float>(cfg_.batch_size));
    if (!std::isfinite(mean_loss.item()))
        throw TrainError(step_, "train: non-finite loss at step " + std::to_string(step_));
    tape.backward(mean_loss);

    GradientRefs ir = collect(tape, image_w_);
    GradientRefs dr = collect(tape, depth_w_);
    image_opt_.step(ir.params, ir.grads);
    depth_opt_.step(dr.params, dr.grads);
    return mean_loss.item();
}

float Trainer::edges_step() {
    Tape<float> tape;
    detach_parameters(image_w_);
    detach_parameters(depth_w_);
    watch_parameters(tape, image_w_);
    watch_parameters(tape, depth_w_);

    Tensor<float> total = Tensor<float>::scalar(0.0f);
    bool first = true;
    for (int b = 0; b < cfg_.batch_size; ++b) {
        const int i = sampler_.uniform_index(dataset_.size());
        const Tensor<float> g = tensor_from_image<float>(dataset_[i].gray);
        const Tensor<float> d = tensor_from_image<float>(dataset_[i].depth_gray);
        const Tensor<float> edge = tensor_from_image<float>(edge_image(i));
        const Tensor<float> k1 = generator_forward(tape, image_w_, g);
        const Tensor<float> k2 = generator_forward(tape, depth_w_, d);
        Tensor<float> item = common_edges_loss(tape, k1, k2, edge);
        total = first ? item : tape.add(total, item);
        first = false;
    }
    Tensor<float> mean_loss = tape.scale(total, 1.0f / static_cast<float>(cfg_.batch_size));
    if (!std::isfinite(mean_loss.item()))
        throw TrainError(step_, "train: non-finite loss at step " + std::to_string(step_));
    tape.backward(mean_loss);

    GradientRefs ir = collect(tape, image_w_);
    GradientRefs dr = collect(tape, depth_w_);
    image_opt_.step(ir.params, ir.grads);
    depth_opt_.step(dr.params, dr.grads);
    return mean_loss.item();
}

float Trainer::train_step() {
    const float loss =
        cfg_.architecture == ArchitectureKind::DoubleSiamese ? siamese_step() : edges_step();
    ++step_;
    loss_history_.push_back(loss);
    return loss;
}

void Trainer::run(const CheckpointFn& on_checkpoint) {
    while (step_ < cfg_.steps) {
        train_step();
        if (on_checkpoint && (step_ % cfg_.checkpoint_every == 0 || step_ == cfg_.steps))
            on_checkpoint(step_, image_w_, depth_w_);
    }
}

namespace {

void put_u32(std::vector<uint8_t>& buf, uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_f32(std::vector<uint8_t>& buf, float f) {
    uint32_t v;
    std::memcpy(&v, &f, 4);
    put_u32(buf, v);
}
void put_blob(std::vector<uint8_t>& buf, const std::vector<uint8_t>& b) {
    put_u32(buf, static_cast<uint32_t>(b.size()));
    buf.insert(buf.end(), b.begin(), b.end());
}
void put_moments(std::vector<uint8_t>& buf, const OptimizerState<float>& o) {
    put_u32(buf, static_cast<uint32_t>(o.step_count));
    put_u32(buf, static_cast<uint32_t>(o.m.size()));
    for (const auto* acc : {&o.m, &o.v})
        for (const auto& vec : *acc) {
            put_u32(buf, static_cast<uint32_t>(vec.size()));
            for (float f : vec) put_f32(buf, f);
        }
}

struct Cursor {
    const std::vector<uint8_t>& buf;
    size_t pos = 0;
    uint32_t u32() {
        if (pos + 4 > buf.size()) throw std::runtime_error("train state: truncated");
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    float f32() {
        const uint32_t v = u32();
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }
    std::vector<uint8_t> blob() {
        const uint32_t n = u32();
        if (pos + n > buf.size()) throw std::runtime_error("train state: truncated");
        std::vector<uint8_t> b(buf.begin() + static_cast<long>(pos), buf.begin() + static_cast<long>(pos + n));
        pos += n;
        return b;
    }
};

void read_moments(Cursor& c, OptimizerState<float>& o) {
    o.step_count = c.u32();
    const uint32_t n = c.u32();
    o.m.assign(n, {});
    o.v.assign(n, {});
    for (auto* acc : {&o.m, &o.v})
        for (auto& vec : *acc) {
            vec.resize(c.u32());
            for (float& f : vec) f = c.f32();
        }
}

}  // namespace

std::vector<uint8_t> Trainer::serialize_state() const {
    std::vector<uint8_t> buf;
    put_u32(buf, static_cast<uint32_t>(step_));
    put_u32(buf, static_cast<uint32_t>(loss_history_.size()));
    for (float f : loss_history_) put_f32(buf, f);
    put_blob(buf, encode_checkpoint(image_w_, GeneratorRole::Image));
    put_blob(buf, encode_checkpoint(depth_w_, GeneratorRole::Depth));
    put_moments(buf, image_opt_);
    put_moments(buf, depth_opt_);
    const std::string rng = sampler_.rng_state();
    put_u32(buf, static_cast<uint32_t>(rng.size()));
    buf.insert(buf.end(), rng.begin(), rng.end());
    return buf;
}

void Trainer::restore_state(const std::vector<uint8_t>& blob) {
    Cursor c{blob};
    step_ = static_cast<int>(c.u32());
    loss_history_.resize(c.u32());
    for (float& f : loss_history_) f = c.f32();
    image_w_ = decode_checkpoint(c.blob());
    depth_w_ = decode_checkpoint(c.blob());
    read_moments(c, image_opt_);
    read_moments(c, depth_opt_);
    const uint32_t n = c.u32();
    if (c.pos + n > blob.size()) throw std::runtime_error("train state: truncated");
    sampler_.restore_rng_state(std::string(blob.begin() + static_cast<long>(c.pos),
                                           blob.begin() + static_cast<long>(c.pos + n)));
}

}  // namespace crbridge
