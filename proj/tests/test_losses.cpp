#include <doctest.h>

#include <random>

#include "crbridge/losses.hpp"
#include "test_util.hpp"

using namespace crbridge;
using testutil::random_tensor;

namespace {

// direct scalar evaluation, independent of the tape ops
double siamese_oracle(const Tensor<double>& k11, const Tensor<double>& k12, const Tensor<double>& k21,
                      const Tensor<double>& k22, double delta) {
    auto mad = [](const Tensor<double>& a, const Tensor<double>& b) {
        double s = 0;
        for (long i = 0; i < a.size(); ++i) s += std::fabs(a.values[i] - b.values[i]);
        return s / static_cast<double>(a.size());
    };
    return mad(k11, k21) + mad(k12, k22) + std::fabs(mad(k11, k12) - delta) +
           std::fabs(mad(k21, k22) - delta);
}

double edges_oracle(const Tensor<double>& k1, const Tensor<double>& k2, const Tensor<double>& ke) {
    auto mad = [](const Tensor<double>& a, const Tensor<double>& b) {
        double s = 0;
        for (long i = 0; i < a.size(); ++i) s += std::fabs(a.values[i] - b.values[i]);
        return s / static_cast<double>(a.size());
    };
    return mad(k1, k2) + mad(k1, ke) + mad(k2, ke);
}

}  // namespace

TEST_CASE("double siamese loss zero cases") {
    Tape<double> tape;
    std::mt19937_64 rng(1);
    const auto k = random_tensor({4, 4}, rng, 0.0, 1.0);
    CHECK(double_siamese_loss(tape, k, k, k, k, 0.0).item() == 0.0);

    const auto a = Tensor<double>::scalar(0.5);
    const auto b = Tensor<double>::scalar(0.1);
    CHECK(double_siamese_loss(tape, a, b, a, b, 0.4).item() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("double siamese loss matches the direct oracle") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        Tape<double> tape;
        const auto k11 = random_tensor({4, 4}, rng, 0.0, 1.0);
        const auto k12 = random_tensor({4, 4}, rng, 0.0, 1.0);
        const auto k21 = random_tensor({4, 4}, rng, 0.0, 1.0);
        const auto k22 = random_tensor({4, 4}, rng, 0.0, 1.0);
        const double got = double_siamese_loss(tape, k11, k12, k21, k22, 0.3).item();
        CHECK(std::abs(got - siamese_oracle(k11, k12, k21, k22, 0.3)) < 1e-9);
        CHECK(got >= 0.0);
    }
}

TEST_CASE("double siamese loss is symmetric under pair swap") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Tape<double> tape;
        const auto k11 = random_tensor({3, 3}, rng, 0.0, 1.0);
        const auto k12 = random_tensor({3, 3}, rng, 0.0, 1.0);
        const auto k21 = random_tensor({3, 3}, rng, 0.0, 1.0);
        const auto k22 = random_tensor({3, 3}, rng, 0.0, 1.0);
        const double a = double_siamese_loss(tape, k11, k12, k21, k22, 0.4).item();
        const double b = double_siamese_loss(tape, k12, k11, k22, k21, 0.4).item();
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("double siamese loss rejects shape mismatch") {
    Tape<double> tape;
    const auto a = Tensor<double>::zeros({2, 2});
    const auto b = Tensor<double>::zeros({3, 3});
    CHECK_THROWS_AS(double_siamese_loss(tape, a, a, b, a, 0.1), std::invalid_argument);
}

TEST_CASE("common edges loss basics") {
    Tape<double> tape;
    std::mt19937_64 rng(4);
    const auto k = random_tensor({4, 4}, rng, 0.0, 1.0);
    CHECK(common_edges_loss(tape, k, k, k).item() == 0.0);

    const auto k1 = Tensor<double>::scalar(0.2);
    const auto k2 = Tensor<double>::scalar(0.4);
    const auto ke = Tensor<double>::scalar(1.0);
    CHECK(common_edges_loss(tape, k1, k2, ke).item() == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("common edges loss matches the direct oracle and is symmetric in k1,k2") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Tape<double> tape;
        const auto k1 = random_tensor({4, 4}, rng, 0.0, 1.0);
        const auto k2 = random_tensor({4, 4}, rng, 0.0, 1.0);
        const auto ke = random_tensor({4, 4}, rng, 0.0, 1.0);
        const double got = common_edges_loss(tape, k1, k2, ke).item();
        CHECK(std::abs(got - edges_oracle(k1, k2, ke)) < 1e-9);
        CHECK(got == doctest::Approx(common_edges_loss(tape, k2, k1, ke).item()).epsilon(1e-12));
    }
}

TEST_CASE("siamese loss vanishes iff the characterizing conditions hold") {
    // constructed inputs: k11 == k21, k12 == k22, ||k11 - k12|| == delta
    Tape<double> tape;
    auto k11 = Tensor<double>::zeros({2, 2});
    auto k12 = Tensor<double>({2, 2}, {0.2, 0.2, 0.2, 0.2});
    CHECK(double_siamese_loss(tape, k11, k12, k11, k12, 0.2).item() ==
          doctest::Approx(0.0).epsilon(1e-12));
    // perturb one condition and the loss moves away from zero
    CHECK(double_siamese_loss(tape, k11, k12, k11, k12, 0.5).item() > 1e-3);
}
