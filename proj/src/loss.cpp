#include "nhtrack/loss.hpp"

#include "nhtrack/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nhtrack {

namespace {

// 2^-32 resolution; a full window of the largest admissible score must stay
// well inside the int64 range and below 2^53 so the sum converts exactly.
constexpr int kScoreFractionBits = 32;
constexpr double kMaxScoreMagnitude = 1.0e3;

}  // namespace

double Grid::clamp(double x) const {
    return std::clamp(x, static_cast<double>(min), static_cast<double>(max));
}

int nearest_cell(double x) { return static_cast<int>(std::lround(x)); }

void LossConfig::validate() const {
    if (grid.min >= grid.max) throw std::invalid_argument("LossConfig: grid_min must be < grid_max");
    if (half_width < 0) throw std::invalid_argument("LossConfig: half_width must be nonnegative");
    if (2 * half_width > grid.max - grid.min)
        throw std::invalid_argument("LossConfig: half_width exceeds half the grid extent");
    if (!(noise_scale >= 0.0) || noise_scale + 1.0 > kMaxScoreMagnitude)
        throw std::invalid_argument("LossConfig: noise_scale must lie in [0, 999]");
}

double clip(double y, double noise_scale) {
    return std::min(1.0 + noise_scale, std::max(y, -noise_scale));
}

std::int64_t quantize_score(double clipped) {
    return std::llround(std::ldexp(clipped, kScoreFractionBits));
}

double dequantize_sum(std::int64_t sum) {
    return std::ldexp(static_cast<double>(sum), -kScoreFractionBits);
}

double observation_loss(double x, std::span<const double> frame, const LossConfig& cfg) {
    if (frame.size() != cfg.grid.size())
        throw std::invalid_argument("observation_loss: frame is not aligned to the grid");
    const int centre = nearest_cell(x);
    const int lo = std::max(cfg.grid.min, centre - cfg.half_width);
    const int hi = std::min(cfg.grid.max, centre + cfg.half_width);
    std::int64_t acc = 0;
    for (int cell = lo; cell <= hi; ++cell)
        acc += quantize_score(clip(frame[cfg.grid.index(cell)], cfg.noise_scale));
    return -dequantize_sum(acc);
}

ObservationLossField::ObservationLossField(std::span<const double> frame, const LossConfig& cfg)
    : grid_(cfg.grid), values_(cfg.grid.size()) {
    if (frame.size() != cfg.grid.size())
        throw std::invalid_argument("ObservationLossField: frame is not aligned to the grid");
    std::vector<std::int64_t> scores(frame.size());
    std::vector<std::int64_t> sums(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i)
        scores[i] = quantize_score(clip(frame[i], cfg.noise_scale));
    kernels::window_sums_serial(scores, cfg.half_width, sums);
    for (std::size_t i = 0; i < frame.size(); ++i) values_[i] = -dequantize_sum(sums[i]);
}

double ObservationLossField::at(double x) const {
    return at_cell(nearest_cell(grid_.clamp(x)));
}

double dynamics_loss(double x, double x_prev, const DynamicsFn& dynamics) {
    const double d = x - dynamics(x_prev);
    return d * d;
}

}  // namespace nhtrack
