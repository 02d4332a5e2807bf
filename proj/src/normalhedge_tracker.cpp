#include "nhtrack/hedge.hpp"
#include "nhtrack/trackers.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace nhtrack {

void NHConfig::validate() const {
    if (n_actions < 1) throw std::invalid_argument("NHConfig: n_actions must be >= 1");
    if (!(discount >= 0.0 && discount < 1.0))
        throw std::invalid_argument("NHConfig: discount must lie in [0, 1)");
    if (!(resample_var > 0.0)) throw std::invalid_argument("NHConfig: resample_var must be > 0");
    if (!dynamics) throw std::invalid_argument("NHConfig: missing dynamics function");
    loss.validate();
}

namespace {

// Index drawn proportionally to `mass` (which must have a positive sum).
std::size_t draw_index(std::span<const double> mass, double total, Rng& rng) {
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        if (mass[i] <= 0.0) continue;
        acc += mass[i];
        last_positive = i;
        if (u < acc) return i;
    }
    return last_positive;
}

}  // namespace

void nh_resample(std::span<const std::size_t> deleted, const ResampleContext& ctx,
                 const ObservationLossField& losses, const NHConfig& cfg, Rng& rng,
                 ActionPool& pool) {
    if (deleted.empty()) return;
    const std::size_t n = ctx.states.size();

    // Source distribution over the pre-deletion pool. The set of positive-regret
    // actions is fixed for the whole tick since children never join it.
    std::vector<double> source(n, 0.0);
    double total = 0.0;
    bool any_positive = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (ctx.regrets[i] > 0.0) {
            any_positive = true;
            source[i] = ctx.prev_weights[i];
            total += source[i];
        }
    }
    if (!any_positive) {
        std::fill(source.begin(), source.end(), 1.0);
        total = static_cast<double>(n);
    } else if (!(total > 0.0)) {
        // Every positive-regret action had zero previous weight.
        for (std::size_t i = 0; i < n; ++i) source[i] = ctx.regrets[i] > 0.0 ? 1.0 : 0.0;
        total = std::accumulate(source.begin(), source.end(), 0.0);
    }

    const double spread = std::sqrt(cfg.resample_var);
    const double keep = 1.0 - cfg.discount;
    for (std::size_t slot : deleted) {
        const std::size_t parent = draw_index(source, total, rng);
        const double child = cfg.loss.grid.clamp(rng.normal(ctx.states[parent], spread));
        pool.states[slot] = child;
        pool.regrets[slot] = keep * ctx.prev_regrets[parent] + (ctx.algorithm_loss - losses.at(child));
    }
}

NormalHedgeTracker::NormalHedgeTracker(NHConfig cfg, Rng rng)
    : cfg_(std::move(cfg)), rng_(std::move(rng)) {
    cfg_.validate();
    const auto n = static_cast<std::size_t>(cfg_.n_actions);
    std::vector<double> states(n);
    const auto& grid = cfg_.loss.grid;
    for (double& x : states)
        x = cfg_.initial_state ? grid.clamp(*cfg_.initial_state) : rng_.uniform(grid.min, grid.max);
    pool_ = {std::move(states), std::vector<double>(n, 0.0),
             std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

NormalHedgeTracker::NormalHedgeTracker(NHConfig cfg, Rng rng, std::vector<double> initial_states)
    : cfg_(std::move(cfg)), rng_(std::move(rng)) {
    cfg_.validate();
    if (initial_states.size() != static_cast<std::size_t>(cfg_.n_actions))
        throw std::invalid_argument("NormalHedgeTracker: initial state count must equal n_actions");
    const auto n = initial_states.size();
    for (double& x : initial_states) x = cfg_.loss.grid.clamp(x);
    pool_ = {std::move(initial_states), std::vector<double>(n, 0.0),
             std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

double NormalHedgeTracker::step(std::span<const double> frame) {
    const ObservationLossField losses(frame, cfg_.loss);
    const std::size_t n = pool_.size();

    // Losses and discounted regret update against the previous weights.
    std::vector<double> action_loss(n);
    for (std::size_t i = 0; i < n; ++i) action_loss[i] = losses.at(pool_.states[i]);
    const double algorithm_loss = hedge::mixture_loss(pool_.weights, action_loss);
    const std::vector<double> prev_regrets = pool_.regrets;
    const std::vector<double> prev_weights = pool_.weights;
    const double keep = 1.0 - cfg_.discount;
    for (std::size_t i = 0; i < n; ++i)
        pool_.regrets[i] = keep * prev_regrets[i] + (algorithm_loss - action_loss[i]);

    // Delete every action with nonpositive regret, then refill those slots.
    std::vector<std::size_t> deleted;
    for (std::size_t i = 0; i < n; ++i)
        if (pool_.regrets[i] <= 0.0) deleted.push_back(i);
    const std::vector<double> states_now = pool_.states;
    const std::vector<double> regrets_now = pool_.regrets;
    const ResampleContext ctx{states_now, prev_regrets, regrets_now, prev_weights, algorithm_loss};
    nh_resample(deleted, ctx, losses, cfg_, rng_, pool_);

    const auto solution = hedge::weights_from_regrets(pool_.regrets, pool_.weights);

    double estimate = 0.0;
    for (std::size_t i = 0; i < n; ++i) estimate += pool_.weights[i] * pool_.states[i];
    estimate = cfg_.loss.grid.clamp(estimate);

    for (double& x : pool_.states) x = cfg_.loss.grid.clamp(cfg_.dynamics(x));

    diag_ = {};
    diag_.deleted = static_cast<int>(deleted.size());
    if (solution) diag_.potential_scale = solution->c;
    return estimate;
}

}  // namespace nhtrack
