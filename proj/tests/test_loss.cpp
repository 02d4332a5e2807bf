#include "nhtrack/loss.hpp"
#include "nhtrack/world.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace nhtrack {
namespace {

std::vector<double> pulse_frame(const Grid& g, double z, int w) {
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = pulse(g.cell(i), z, w);
    return f;
}

TEST(Clip, Saturation) {
    EXPECT_EQ(clip(5.0, 1.0), 2.0);
    EXPECT_EQ(clip(-3.0, 1.0), -1.0);
    EXPECT_EQ(clip(0.5, 1.0), 0.5);
}

TEST(ObservationLoss, NoiselessPulseAtTruth) {
    LossConfig cfg;
    const auto frame = pulse_frame(cfg.grid, 37.0, cfg.half_width);
    EXPECT_EQ(observation_loss(37.0, frame, cfg), -101.0);
    EXPECT_EQ(ObservationLossField(frame, cfg).at(37.0), -101.0);
}

TEST(ObservationLoss, ZeroFrame) {
    LossConfig cfg;
    const std::vector<double> frame(cfg.grid.size(), 0.0);
    for (double x : {-400.0, 0.0, 123.4, 449.0}) EXPECT_EQ(observation_loss(x, frame, cfg), 0.0);
}

TEST(ObservationLoss, TruncatedWindowAtGridEdge) {
    for (double sigma : {1.0, 8.0}) {
        LossConfig cfg;
        cfg.noise_scale = sigma;
        const std::vector<double> frame(cfg.grid.size(), 1e6);
        EXPECT_EQ(observation_loss(500.0, frame, cfg), -51.0 * (1.0 + sigma));
        EXPECT_EQ(observation_loss(-500.0, frame, cfg), -51.0 * (1.0 + sigma));
    }
}

TEST(ObservationLoss, RoundsContinuousStates) {
    LossConfig cfg;
    const auto frame = pulse_frame(cfg.grid, 0.0, cfg.half_width);
    EXPECT_EQ(observation_loss(0.4, frame, cfg), observation_loss(0.0, frame, cfg));
    EXPECT_EQ(observation_loss(0.6, frame, cfg), observation_loss(1.0, frame, cfg));
    EXPECT_EQ(observation_loss(1.0, frame, cfg), -100.0);
}

TEST(ObservationLoss, BatchEqualsPointwiseExactly) {
    std::mt19937_64 gen(3);
    for (double sigma : {0.5, 1.0, 8.0}) {
        for (int w : {0, 1, 7, 50}) {
            LossConfig cfg;
            cfg.noise_scale = sigma;
            cfg.half_width = w;
            std::normal_distribution<double> noise(0.0, 10.0 * sigma);
            std::vector<double> frame(cfg.grid.size());
            for (double& v : frame) v = noise(gen);
            const ObservationLossField field(frame, cfg);
            for (int c = cfg.grid.min; c <= cfg.grid.max; ++c)
                ASSERT_EQ(field.at_cell(c), observation_loss(c, frame, cfg)) << "cell " << c;
        }
    }
}

TEST(ObservationLoss, BoundedForAnyFrame) {
    std::mt19937_64 gen(4);
    std::cauchy_distribution<double> wild(0.0, 50.0);
    LossConfig cfg;
    cfg.noise_scale = 2.0;
    const double lo = -(2 * cfg.half_width + 1) * (1 + cfg.noise_scale);
    const double hi = (2 * cfg.half_width + 1) * cfg.noise_scale;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> frame(cfg.grid.size());
        for (double& v : frame) v = wild(gen);
        for (double v : ObservationLossField(frame, cfg).values()) {
            EXPECT_GE(v, lo);
            EXPECT_LE(v, hi);
        }
    }
}

TEST(ObservationLoss, TranslationConsistency) {
    LossConfig cfg;
    for (int offset : {-17, 3, 200}) {
        const auto a = pulse_frame(cfg.grid, 10.0, cfg.half_width);
        const auto b = pulse_frame(cfg.grid, 10.0 + offset, cfg.half_width);
        for (int x : {-30, 0, 10, 45, 70, 140})
            EXPECT_EQ(observation_loss(x, a, cfg), observation_loss(x + offset, b, cfg));
    }
}

TEST(ObservationLoss, RejectsBadInput) {
    LossConfig cfg;
    EXPECT_THROW(observation_loss(0.0, std::vector<double>(10), cfg), std::invalid_argument);
    cfg.half_width = -1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(DynamicsLoss, Quadratic) {
    EXPECT_EQ(dynamics_loss(4.0, 4.0, identity_dynamics), 0.0);
    EXPECT_EQ(dynamics_loss(5.0, 2.0, identity_dynamics), 9.0);
    const DynamicsFn drift = [](double x) { return x + 1.0; };
    EXPECT_EQ(dynamics_loss(3.0, 2.0, drift), 0.0);
    EXPECT_LT(dynamics_loss(3.0, 0.0, identity_dynamics), dynamics_loss(4.0, 0.0, identity_dynamics));
}

}  // namespace
}  // namespace nhtrack
