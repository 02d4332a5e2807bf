#pragma once

// Seeded Monte Carlo runner: every trial simulates one world trace and runs
// the requested trackers over that same trace.

#include "nhtrack/trackers.hpp"
#include "nhtrack/world.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nhtrack {

enum class TrackerKind { NormalHedge, Bayes, Particle };

std::string_view to_string(TrackerKind kind);
/// Accepts "nh", "bayes", "pf". Throws std::invalid_argument otherwise.
TrackerKind parse_tracker(std::string_view name);

enum class SweepParam { SigmaStar, Alpha };

std::string_view to_string(SweepParam param);
/// Accepts "sigma-star" and "alpha".
SweepParam parse_sweep_param(std::string_view name);

struct Sweep {
    SweepParam param = SweepParam::SigmaStar;
    std::vector<double> values;
};

/// Where the NH tracker places its actions before the first frame.
enum class NHInit {
    Prior,    // all at the known start state z_1 = 0, the prior the baselines get
    Uniform,  // uniformly over the grid
};

std::string_view to_string(NHInit init);
/// Accepts "prior" and "uniform".
NHInit parse_nh_init(std::string_view name);

/// Estimator settings shared by every trial.
struct TrackerParams {
    NHInit nh_init = NHInit::Prior;
    int n_actions = 100;
    double discount = 0.02;
    double resample_var = 400.0;
    double transition_sigma = 2.0;
    int n_particles = 100;
};

struct ExperimentSpec {
    WorldConfig world;  // world.outlier_frac is overridden per entry of rho_list
    std::vector<TrackerKind> trackers{TrackerKind::NormalHedge, TrackerKind::Bayes,
                                      TrackerKind::Particle};
    std::size_t trials = 100;
    std::vector<double> rho_list{0.0, 0.01, 0.05, 0.10, 0.15, 0.20};
    std::optional<Sweep> sweep;  // when set, only the NH tracker runs, once per value
    std::uint64_t base_seed = 0;
    TrackerParams params;
    int workers = 1;

    void validate() const;
};

std::unique_ptr<Tracker> make_tracker(TrackerKind kind, const WorldConfig& world,
                                      const TrackerParams& params, std::uint64_t base_seed,
                                      std::uint64_t trial_index);

/// Root-mean-squared difference. Throws on empty or mismatched input.
double rmse(std::span<const double> estimates, std::span<const double> truths);

/// The world trace of one trial; depends only on (world config, base seed, trial index).
Trace trial_trace(const WorldConfig& world, std::uint64_t base_seed, std::uint64_t trial_index);

/// Runs every requested tracker over the trial's trace at spec.world.outlier_frac.
std::map<TrackerKind, double> run_trial(const ExperimentSpec& spec, std::size_t trial_index);

struct CellResult {
    TrackerKind tracker = TrackerKind::NormalHedge;
    double sigma_o = 0.0;
    double rho = 0.0;
    std::optional<SweepParam> sweep_param;
    double sweep_value = 0.0;
    std::vector<double> trial_rmse;
    double mean_rmse = 0.0;
    double std_rmse = 0.0;  // sample std (n - 1); 0 for a single trial
};

struct AggregateResult {
    std::vector<CellResult> cells;  // ordered by tracker, rho, then sweep value
};

/// Mean and sample standard deviation of the per-trial values.
void summarize(CellResult& cell);

/// Runs all (rho, trial) tasks on up to spec.workers threads. The result is
/// identical for any worker count. A failing trial aborts the experiment with
/// a std::runtime_error naming the trial.
AggregateResult run_experiment(const ExperimentSpec& spec);

}  // namespace nhtrack
