#include "nhtrack/trackers.hpp"

#include <cmath>
#include <stdexcept>

namespace nhtrack {

void ParticleConfig::validate() const {
    if (n_particles < 1) throw std::invalid_argument("ParticleConfig: n_particles must be >= 1");
    if (!(transition_sigma > 0.0))
        throw std::invalid_argument("ParticleConfig: transition_sigma must be > 0");
    if (!(like_sigma > 0.0)) throw std::invalid_argument("ParticleConfig: like_sigma must be > 0");
    if (half_width < 0) throw std::invalid_argument("ParticleConfig: half_width must be >= 0");
    if (grid.min >= grid.max) throw std::invalid_argument("ParticleConfig: empty grid");
}

std::vector<std::size_t> systematic_resample(std::span<const double> weights, double offset) {
    const std::size_t n = weights.size();
    std::vector<std::size_t> picks(n);
    if (n == 0) return picks;
    const double stride = 1.0 / static_cast<double>(n);
    double cumulative = weights[0];
    std::size_t source = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = (offset + static_cast<double>(k)) * stride;
        while (u >= cumulative && source + 1 < n) cumulative += weights[++source];
        picks[k] = source;
    }
    return picks;
}

ParticleFilter::ParticleFilter(ParticleConfig cfg, Rng rng, double initial_state)
    : cfg_(std::move(cfg)), rng_(std::move(rng)) {
    cfg_.validate();
    const auto n = static_cast<std::size_t>(cfg_.n_particles);
    positions_.assign(n, cfg_.grid.clamp(initial_state));
    weights_.assign(n, 1.0 / static_cast<double>(n));
}

double ParticleFilter::step(std::span<const double> frame) {
    const auto& grid = cfg_.grid;
    if (frame.size() != grid.size())
        throw std::invalid_argument("ParticleFilter: frame is not aligned to the grid");
    const std::size_t n = positions_.size();

    if (started_)
        for (double& x : positions_) x = grid.clamp(x + cfg_.transition_sigma * rng_.normal());
    started_ = true;

    // Full Gaussian exponent: -(sum M^2 - window term) / (2 s^2).
    const auto field = log_likelihood_field(frame, cfg_.half_width, cfg_.like_sigma, grid);
    double sum_sq = 0.0;
    for (double m : frame) sum_sq += m * m;
    const double offset = -sum_sq / (2.0 * cfg_.like_sigma * cfg_.like_sigma);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double log_like = offset + field[grid.index(nearest_cell(positions_[i]))];
        weights_[i] *= std::exp(log_like);
        total += weights_[i];
    }

    diag_ = {};
    if (!(total > 0.0) || !std::isfinite(total)) {
        ++collapses_;
        diag_.weight_collapse = true;
        weights_.assign(n, 1.0 / static_cast<double>(n));
    } else {
        for (double& w : weights_) w /= total;
    }

    double estimate = 0.0;
    double sum_w2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        estimate += weights_[i] * positions_[i];
        sum_w2 += weights_[i] * weights_[i];
    }
    diag_.effective_sample_size = 1.0 / sum_w2;

    const auto picks = systematic_resample(weights_, rng_.uniform());
    std::vector<double> resampled(n);
    for (std::size_t k = 0; k < n; ++k) resampled[k] = positions_[picks[k]];
    positions_ = std::move(resampled);
    weights_.assign(n, 1.0 / static_cast<double>(n));

    return grid.clamp(estimate);
}

}  // namespace nhtrack
