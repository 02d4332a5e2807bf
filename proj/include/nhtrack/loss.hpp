#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nhtrack {

/// Integer lattice {min, ..., max} on which measurements and losses live.
struct Grid {
    int min = -500;
    int max = 500;

    std::size_t size() const { return static_cast<std::size_t>(max - min + 1); }
    bool contains(int cell) const { return cell >= min && cell <= max; }
    std::size_t index(int cell) const { return static_cast<std::size_t>(cell - min); }
    int cell(std::size_t index) const { return min + static_cast<int>(index); }
    double clamp(double x) const;
};

/// Nearest integer cell of a continuous state (halves round away from zero).
int nearest_cell(double x);

/// Expected next state of a path. The shipped problem uses the identity.
using DynamicsFn = std::function<double(double)>;

inline double identity_dynamics(double x) { return x; }

struct LossConfig {
    int half_width = 50;
    double noise_scale = 1.0;
    Grid grid;

    /// Throws std::invalid_argument when the grid or window is malformed.
    void validate() const;
};

/// Clips a detector score into [-noise_scale, 1 + noise_scale].
double clip(double y, double noise_scale);

/// Fixed-point image of a clipped score. Window sums are accumulated in this
/// representation so every evaluation order gives the same bits.
std::int64_t quantize_score(double clipped);
double dequantize_sum(std::int64_t sum);

/// Negative clipped score summed over [round(x) - W, round(x) + W] ∩ G.
double observation_loss(double x, std::span<const double> frame, const LossConfig& cfg);

/// Observation loss for every grid cell, computed once per frame.
class ObservationLossField {
public:
    ObservationLossField() = default;
    ObservationLossField(std::span<const double> frame, const LossConfig& cfg);

    /// Loss at the nearest cell of x; x is clamped into the grid first.
    double at(double x) const;
    double at_cell(int cell) const { return values_[grid_.index(cell)]; }
    std::span<const double> values() const { return values_; }
    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Reference dynamics loss: squared distance from the predicted state.
double dynamics_loss(double x, double x_prev, const DynamicsFn& dynamics);

}  // namespace nhtrack
