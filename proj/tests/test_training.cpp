#include <doctest.h>

#include <cmath>

#include "crbridge/synthetic.hpp"
#include "crbridge/training.hpp"

using namespace crbridge;

namespace {

TrainConfig tiny_config(ArchitectureKind arch) {
    TrainConfig cfg;
    cfg.architecture = arch;
    cfg.width = 32;
    cfg.height = 16;
    cfg.encoder_channels = {4, 8};
    cfg.batch_size = 2;
    cfg.steps = 4;
    cfg.checkpoint_every = 2;
    cfg.window_k = 2;
    cfg.seed = 7;
    return cfg;
}

std::vector<FramePair> tiny_dataset(int frames = 12) {
    return generate_sequence(3, frames, default_intrinsics(32, 16));
}

bool weights_equal(const GeneratorWeights<float>& a, const GeneratorWeights<float>& b) {
    if (a.layers.size() != b.layers.size()) return false;
    for (size_t i = 0; i < a.layers.size(); ++i)
        if (a.layers[i].kernel.values != b.layers[i].kernel.values ||
            a.layers[i].bias.values != b.layers[i].bias.values)
            return false;
    return true;
}

}  // namespace

TEST_CASE("config validation rejects bad values") {
    auto cfg = tiny_config(ArchitectureKind::DoubleSiamese);
    cfg.batch_size = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = tiny_config(ArchitectureKind::DoubleSiamese);
    cfg.p_similar = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = tiny_config(ArchitectureKind::DoubleSiamese);
    cfg.learning_rate = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("zero learning rate leaves weights unchanged") {
    auto cfg = tiny_config(ArchitectureKind::DoubleSiamese);
    cfg.learning_rate = 0.0;
    Trainer t(cfg, tiny_dataset());
    const auto before_img = t.image_weights();
    const auto before_dep = t.depth_weights();
    t.train_step();
    CHECK(weights_equal(t.image_weights(), before_img));
    CHECK(weights_equal(t.depth_weights(), before_dep));
}

TEST_CASE("training is deterministic for a fixed seed") {
    for (auto arch : {ArchitectureKind::DoubleSiamese, ArchitectureKind::CommonEdges}) {
        Trainer a(tiny_config(arch), tiny_dataset());
        Trainer b(tiny_config(arch), tiny_dataset());
        a.run();
        b.run();
        CHECK(a.loss_history() == b.loss_history());
        CHECK(weights_equal(a.image_weights(), b.image_weights()));
        CHECK(weights_equal(a.depth_weights(), b.depth_weights()));
    }
}

TEST_CASE("losses are finite and positive on real data") {
    for (auto arch : {ArchitectureKind::DoubleSiamese, ArchitectureKind::CommonEdges}) {
        Trainer t(tiny_config(arch), tiny_dataset());
        const float loss = t.train_step();
        CHECK(std::isfinite(loss));
        CHECK(loss > 0.0f);
    }
}

TEST_CASE("one optimizer step changes the weights") {
    Trainer t(tiny_config(ArchitectureKind::CommonEdges), tiny_dataset());
    const auto before = t.image_weights();
    t.train_step();
    CHECK(!weights_equal(t.image_weights(), before));
}

TEST_CASE("checkpoint callback fires on schedule") {
    auto cfg = tiny_config(ArchitectureKind::DoubleSiamese);
    cfg.steps = 5;
    cfg.checkpoint_every = 2;
    Trainer t(cfg, tiny_dataset());
    std::vector<int> steps_seen;
    t.run([&](int step, const GeneratorWeights<float>&, const GeneratorWeights<float>&) {
        steps_seen.push_back(step);
    });
    CHECK(steps_seen == std::vector<int>{2, 4, 5});
}

TEST_CASE("resume from serialized state is bit-exact") {
    for (auto arch : {ArchitectureKind::DoubleSiamese, ArchitectureKind::CommonEdges}) {
        auto cfg = tiny_config(arch);
        cfg.steps = 6;

        Trainer uninterrupted(cfg, tiny_dataset());
        uninterrupted.run();

        Trainer first_half(cfg, tiny_dataset());
        for (int i = 0; i < 3; ++i) first_half.train_step();
        const auto blob = first_half.serialize_state();

        Trainer resumed(cfg, tiny_dataset());
        resumed.restore_state(blob);
        CHECK(resumed.step() == 3);
        resumed.run();

        CHECK(resumed.loss_history() == uninterrupted.loss_history());
        CHECK(weights_equal(resumed.image_weights(), uninterrupted.image_weights()));
        CHECK(weights_equal(resumed.depth_weights(), uninterrupted.depth_weights()));
    }
}

TEST_CASE("trainer rejects a dataset smaller than the sampling window") {
    auto cfg = tiny_config(ArchitectureKind::DoubleSiamese);
    CHECK_THROWS_AS(Trainer(cfg, tiny_dataset(3)), std::invalid_argument);
}

TEST_CASE("image and depth generators are initialized differently") {
    Trainer t(tiny_config(ArchitectureKind::DoubleSiamese), tiny_dataset());
    CHECK(!weights_equal(t.image_weights(), t.depth_weights()));
}
