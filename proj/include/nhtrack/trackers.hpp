#pragma once

// Streaming state estimators. Each consumes one measurement frame per tick
// and returns one position estimate inside the grid.

#include "nhtrack/loss.hpp"
#include "nhtrack/rng.hpp"

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace nhtrack {

/// Per-tick diagnostics for trace export. NaN / -1 mark "not applicable".
struct StepDiagnostics {
    int deleted = -1;                                            // NH: actions resampled
    double potential_scale = std::numeric_limits<double>::quiet_NaN();  // NH: c_t
    double effective_sample_size = std::numeric_limits<double>::quiet_NaN();  // PF
    bool weight_collapse = false;                                // PF: weights underflowed
};

class Tracker {
public:
    virtual ~Tracker() = default;

    /// Consumes the frame for the next tick and returns the state estimate.
    virtual double step(std::span<const double> frame) = 0;
    virtual std::string_view name() const = 0;
    virtual StepDiagnostics diagnostics() const { return {}; }
};

// ---------------------------------------------------------------------------
// NormalHedge tracker

struct NHConfig {
    int n_actions = 100;
    double discount = 0.02;
    double resample_var = 400.0;  // 1x1 covariance of the resampling kernel
    LossConfig loss;
    DynamicsFn dynamics = identity_dynamics;
    /// When set, every action starts at this state instead of uniformly over the grid.
    std::optional<double> initial_state;

    void validate() const;
};

/// Current states, discounted regrets and weights of the tracked actions.
struct ActionPool {
    std::vector<double> states;
    std::vector<double> regrets;
    std::vector<double> weights;

    std::size_t size() const { return states.size(); }
};

/// Inputs to the resampling of deleted actions: a snapshot of the pool taken
/// after the regret update but before deletion.
struct ResampleContext {
    std::span<const double> states;        // x_{i,t}
    std::span<const double> prev_regrets;  // R_i^{t-1}
    std::span<const double> regrets;       // R_i^t
    std::span<const double> prev_weights;  // p_i^{t-1}
    double algorithm_loss = 0.0;           // l_A^t
};

/// Refills every slot in `deleted`: pick a source action (proportional to its
/// previous weight among actions with positive regret, uniform over the whole
/// pool when there are none), draw a child around the source's state with
/// variance cfg.resample_var, and give it the source's discounted previous
/// regret plus its own instantaneous regret. Children are clamped into the
/// grid and are never re-deleted within the same tick.
void nh_resample(std::span<const std::size_t> deleted, const ResampleContext& ctx,
                 const ObservationLossField& losses, const NHConfig& cfg, Rng& rng,
                 ActionPool& pool);

class NormalHedgeTracker final : public Tracker {
public:
    /// Actions start uniformly over the grid (or all at cfg.initial_state) with
    /// zero regret and equal weight.
    NormalHedgeTracker(NHConfig cfg, Rng rng);
    /// Starts from an explicit pool of states (zero regret, equal weight).
    NormalHedgeTracker(NHConfig cfg, Rng rng, std::vector<double> initial_states);

    double step(std::span<const double> frame) override;
    std::string_view name() const override { return "nh"; }
    StepDiagnostics diagnostics() const override { return diag_; }

    const ActionPool& pool() const { return pool_; }
    const NHConfig& config() const { return cfg_; }

private:
    NHConfig cfg_;
    Rng rng_;
    ActionPool pool_;
    StepDiagnostics diag_;
};

// ---------------------------------------------------------------------------
// Exact grid Bayes filter

struct BayesConfig {
    double transition_sigma = 2.0;
    double like_sigma = 1.0;
    int half_width = 50;
    Grid grid;
    double truncation = 6.0;  // transition kernel support, in units of sigma

    void validate() const;
};

/// Discretized Normal(0, sigma^2) taps at integer offsets |k| <= floor(truncation * sigma),
/// not normalized.
std::vector<double> gaussian_taps(double sigma, double truncation);

/// Log-likelihood of the frame for every candidate cell, up to a constant
/// shared by all candidates:  sum over the pulse window of (2 M(x) - 1) / (2 s^2).
std::vector<double> log_likelihood_field(std::span<const double> frame, int half_width,
                                         double like_sigma, const Grid& grid);

class GridBayesFilter final : public Tracker {
public:
    /// Prior: point mass at the given cell.
    GridBayesFilter(BayesConfig cfg, int initial_cell);
    /// Prior: arbitrary nonnegative mass over the grid (normalized internally).
    GridBayesFilter(BayesConfig cfg, std::vector<double> prior);

    /// First call: update only. Later calls: predict, then update.
    double step(std::span<const double> frame) override;
    std::string_view name() const override { return "bayes"; }

    std::span<const double> posterior() const { return mass_; }
    /// Column-normalized transition applied to the current posterior.
    void predict();
    void update(std::span<const double> frame);
    double mean() const;

private:
    BayesConfig cfg_;
    std::vector<double> mass_;
    std::vector<double> taps_;
    std::vector<double> inv_column_norm_;
    std::vector<double> scratch_;
    bool started_ = false;
};

// ---------------------------------------------------------------------------
// Bootstrap particle filter

struct ParticleConfig {
    int n_particles = 100;
    double transition_sigma = 2.0;
    double like_sigma = 1.0;
    int half_width = 50;
    Grid grid;

    void validate() const;
};

/// Systematic resampling: returns n indices drawn with one uniform offset.
std::vector<std::size_t> systematic_resample(std::span<const double> weights, double offset);

/// Bootstrap SIR. Weights use the Gaussian likelihood
///   exp(-sum_{x in G} (M(x) - H(x, s))^2 / (2 s_o^2))
/// evaluated in linear space at each particle's nearest cell. Gross outliers
/// drive every weight below the double range; the filter then resets to
/// uniform weights and the frame carries no information.
class ParticleFilter final : public Tracker {
public:
    /// All particles start at `initial_state` with equal weight.
    ParticleFilter(ParticleConfig cfg, Rng rng, double initial_state = 0.0);

    double step(std::span<const double> frame) override;
    std::string_view name() const override { return "pf"; }
    StepDiagnostics diagnostics() const override { return diag_; }

    std::span<const double> positions() const { return positions_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t collapse_count() const { return collapses_; }

private:
    ParticleConfig cfg_;
    Rng rng_;
    std::vector<double> positions_;
    std::vector<double> weights_;
    bool started_ = false;
    std::size_t collapses_ = 0;
    StepDiagnostics diag_;
};

}  // namespace nhtrack
