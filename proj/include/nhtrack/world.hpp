#pragma once

// Synthetic 1D tracking world: a slowly drifting target observed through a
// square-pulse detector response plus two-component Gaussian mixture noise.

#include "nhtrack/loss.hpp"
#include "nhtrack/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace nhtrack {

using MeasurementFrame = std::vector<double>;

struct WorldConfig {
    int half_width = 50;
    double noise_scale = 1.0;   // inlier noise std; outliers use 10x this
    double outlier_frac = 0.0;  // probability a cell's noise is an outlier draw
    int horizon = 200;
    Grid grid;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Trajectory law: piecewise-constant velocity drawn from this set.
inline constexpr double kVelocityChoices[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
inline constexpr double kMeanSegmentLength = 50.0;
inline constexpr double kReflectionBound = 450.0;
inline constexpr double kOutlierScale = 10.0;

struct Trace {
    std::vector<double> true_states;
    std::vector<MeasurementFrame> frames;

    std::size_t horizon() const { return true_states.size(); }
};

/// 1 when |x - z| <= half_width, else 0.
int pulse(int x, double z, int half_width);

/// One draw from (1 - rho) N(0, s^2) + rho N(0, (10 s)^2).
double sample_noise(Rng& rng, double noise_scale, double outlier_frac);

std::vector<double> gen_trajectory(const WorldConfig& cfg, Rng& rng);

MeasurementFrame gen_measurements(double z, const WorldConfig& cfg, Rng& rng);

/// Trajectory then frames, all from one stream.
Trace simulate(const WorldConfig& cfg, Rng& rng);

/// Uses a stream seeded from cfg.seed.
Trace simulate(const WorldConfig& cfg);

/// CSV with columns t,z_t and, when include_frames is set, one column per
/// grid cell (m_<cell>). Throws std::runtime_error naming the path on failure.
void write_trace_csv(const Trace& trace, const Grid& grid, bool include_frames,
                     const std::filesystem::path& path);

}  // namespace nhtrack
