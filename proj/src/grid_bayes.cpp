#include "nhtrack/kernels.hpp"
#include "nhtrack/trackers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nhtrack {

void BayesConfig::validate() const {
    if (!(transition_sigma > 0.0)) throw std::invalid_argument("BayesConfig: transition_sigma must be > 0");
    if (!(like_sigma > 0.0)) throw std::invalid_argument("BayesConfig: like_sigma must be > 0");
    if (!(truncation > 0.0)) throw std::invalid_argument("BayesConfig: truncation must be > 0");
    if (half_width < 0) throw std::invalid_argument("BayesConfig: half_width must be >= 0");
    if (grid.min >= grid.max) throw std::invalid_argument("BayesConfig: empty grid");
}

std::vector<double> gaussian_taps(double sigma, double truncation) {
    const int radius = static_cast<int>(std::floor(truncation * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    for (int k = -radius; k <= radius; ++k)
        taps[static_cast<std::size_t>(k + radius)] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    return taps;
}

std::vector<double> log_likelihood_field(std::span<const double> frame, int half_width,
                                         double like_sigma, const Grid& grid) {
    if (frame.size() != grid.size())
        throw std::invalid_argument("log_likelihood_field: frame is not aligned to the grid");
    // (M - H)^2 = M^2 - H (2M - 1) for H in {0, 1}; only the window term varies.
    std::vector<double> centred(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) centred[i] = 2.0 * frame[i] - 1.0;
    std::vector<double> field(frame.size());
    kernels::window_sums(centred, half_width, field);
    const double scale = 1.0 / (2.0 * like_sigma * like_sigma);
    for (double& v : field) v *= scale;
    return field;
}

namespace {

std::vector<double> point_mass(const Grid& grid, int cell) {
    if (!grid.contains(cell)) throw std::invalid_argument("GridBayesFilter: prior cell outside grid");
    std::vector<double> mass(grid.size(), 0.0);
    mass[grid.index(cell)] = 1.0;
    return mass;
}

}  // namespace

GridBayesFilter::GridBayesFilter(BayesConfig cfg, int initial_cell)
    : GridBayesFilter(cfg, point_mass(cfg.grid, initial_cell)) {}

GridBayesFilter::GridBayesFilter(BayesConfig cfg, std::vector<double> prior)
    : cfg_(std::move(cfg)), mass_(std::move(prior)) {
    cfg_.validate();
    if (mass_.size() != cfg_.grid.size())
        throw std::invalid_argument("GridBayesFilter: prior is not aligned to the grid");
    double total = 0.0;
    for (double m : mass_) {
        if (!(m >= 0.0) || !std::isfinite(m))
            throw std::invalid_argument("GridBayesFilter: prior must be finite and nonnegative");
        total += m;
    }
    if (!(total > 0.0)) throw std::invalid_argument("GridBayesFilter: prior has no mass");
    for (double& m : mass_) m /= total;

    taps_ = gaussian_taps(cfg_.transition_sigma, cfg_.truncation);

    // Normalizer of each source cell over the destinations that stay on the grid.
    const std::vector<double> ones(mass_.size(), 1.0);
    std::vector<double> column_norm(mass_.size());
    kernels::convolve_serial(ones, taps_, column_norm);  // taps are symmetric
    inv_column_norm_.resize(mass_.size());
    for (std::size_t i = 0; i < mass_.size(); ++i) inv_column_norm_[i] = 1.0 / column_norm[i];
    scratch_.resize(mass_.size());
}

void GridBayesFilter::predict() {
    for (std::size_t i = 0; i < mass_.size(); ++i) scratch_[i] = mass_[i] * inv_column_norm_[i];
    kernels::convolve_parallel(scratch_, taps_, mass_);
}

void GridBayesFilter::update(std::span<const double> frame) {
    std::vector<double> log_post =
        log_likelihood_field(frame, cfg_.half_width, cfg_.like_sigma, cfg_.grid);
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < log_post.size(); ++i) {
        log_post[i] = mass_[i] > 0.0 ? log_post[i] + std::log(mass_[i])
                                     : -std::numeric_limits<double>::infinity();
        shift = std::max(shift, log_post[i]);
    }
    if (!std::isfinite(shift)) throw std::runtime_error("GridBayesFilter: posterior lost all mass");
    const double total = kernels::exp_shifted_parallel(log_post, shift, mass_);
    if (!(total > 0.0)) throw std::runtime_error("GridBayesFilter: posterior lost all mass");
    for (double& m : mass_) m /= total;
}

double GridBayesFilter::mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) acc += mass_[i] * cfg_.grid.cell(i);
    return cfg_.grid.clamp(acc);
}

double GridBayesFilter::step(std::span<const double> frame) {
    if (started_) predict();
    started_ = true;
    update(frame);
    return mean();
}

}  // namespace nhtrack
