#include "nhtrack/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

namespace nhtrack {

std::string_view to_string(TrackerKind kind) {
    switch (kind) {
        case TrackerKind::NormalHedge: return "nh";
        case TrackerKind::Bayes: return "bayes";
        case TrackerKind::Particle: return "pf";
    }
    return "?";
}

TrackerKind parse_tracker(std::string_view name) {
    if (name == "nh") return TrackerKind::NormalHedge;
    if (name == "bayes") return TrackerKind::Bayes;
    if (name == "pf") return TrackerKind::Particle;
    throw std::invalid_argument("unknown tracker '" + std::string(name) + "' (expected nh, bayes or pf)");
}

std::string_view to_string(SweepParam param) {
    switch (param) {
        case SweepParam::SigmaStar: return "sigma-star";
        case SweepParam::Alpha: return "alpha";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "sigma-star") return SweepParam::SigmaStar;
    if (name == "alpha") return SweepParam::Alpha;
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected sigma-star or alpha)");
}

std::string_view to_string(NHInit init) {
    return init == NHInit::Prior ? "prior" : "uniform";
}

NHInit parse_nh_init(std::string_view name) {
    if (name == "prior") return NHInit::Prior;
    if (name == "uniform") return NHInit::Uniform;
    throw std::invalid_argument("unknown NH initialization '" + std::string(name) +
                                "' (expected prior or uniform)");
}

void ExperimentSpec::validate() const {
    world.validate();
    if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
    if (rho_list.empty()) throw std::invalid_argument("ExperimentSpec: rho_list is empty");
    for (double rho : rho_list)
        if (!(rho >= 0.0 && rho <= 1.0))
            throw std::invalid_argument("ExperimentSpec: rho values must lie in [0, 1]");
    if (trackers.empty() && !sweep) throw std::invalid_argument("ExperimentSpec: no trackers requested");
    if (sweep && sweep->values.empty()) throw std::invalid_argument("ExperimentSpec: sweep has no values");
    if (workers < 1) throw std::invalid_argument("ExperimentSpec: workers must be >= 1");
}

std::unique_ptr<Tracker> make_tracker(TrackerKind kind, const WorldConfig& world,
                                      const TrackerParams& params, std::uint64_t base_seed,
                                      std::uint64_t trial_index) {
    switch (kind) {
        case TrackerKind::NormalHedge: {
            NHConfig cfg;
            cfg.n_actions = params.n_actions;
            cfg.discount = params.discount;
            cfg.resample_var = params.resample_var;
            cfg.loss = {world.half_width, world.noise_scale, world.grid};
            if (params.nh_init == NHInit::Prior) cfg.initial_state = 0.0;
            return std::make_unique<NormalHedgeTracker>(
                cfg, Rng(base_seed, trial_index, Stream::NormalHedge));
        }
        case TrackerKind::Bayes: {
            BayesConfig cfg;
            cfg.transition_sigma = params.transition_sigma;
            cfg.like_sigma = world.noise_scale;
            cfg.half_width = world.half_width;
            cfg.grid = world.grid;
            return std::make_unique<GridBayesFilter>(cfg, 0);
        }
        case TrackerKind::Particle: {
            ParticleConfig cfg;
            cfg.n_particles = params.n_particles;
            cfg.transition_sigma = params.transition_sigma;
            cfg.like_sigma = world.noise_scale;
            cfg.half_width = world.half_width;
            cfg.grid = world.grid;
            return std::make_unique<ParticleFilter>(
                cfg, Rng(base_seed, trial_index, Stream::ParticleFilter), 0.0);
        }
    }
    throw std::invalid_argument("make_tracker: unknown tracker kind");
}

double rmse(std::span<const double> estimates, std::span<const double> truths) {
    if (estimates.size() != truths.size()) throw std::invalid_argument("rmse: length mismatch");
    if (estimates.empty()) throw std::invalid_argument("rmse: empty sequence");
    double acc = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double d = estimates[i] - truths[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(estimates.size()));
}

Trace trial_trace(const WorldConfig& world, std::uint64_t base_seed, std::uint64_t trial_index) {
    Rng rng(base_seed, trial_index, Stream::World);
    return simulate(world, rng);
}

namespace {

double track_rmse(Tracker& tracker, const Trace& trace) {
    std::vector<double> estimates;
    estimates.reserve(trace.horizon());
    for (const auto& frame : trace.frames) estimates.push_back(tracker.step(frame));
    return rmse(estimates, trace.true_states);
}

std::vector<TrackerKind> canonical_order(std::vector<TrackerKind> kinds) {
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    return kinds;
}

// One (rho, trial) task: RMSE per output cell column, in cell order.
struct TaskPlan {
    std::vector<TrackerKind> kinds;  // non-sweep mode
    std::optional<Sweep> sweep;
};

std::vector<double> run_task(const ExperimentSpec& spec, const TaskPlan& plan, double rho,
                             std::size_t trial_index) {
    WorldConfig world = spec.world;
    world.outlier_frac = rho;
    const Trace trace = trial_trace(world, spec.base_seed, trial_index);

    std::vector<double> out;
    if (plan.sweep) {
        for (double value : plan.sweep->values) {
            TrackerParams params = spec.params;
            if (plan.sweep->param == SweepParam::SigmaStar)
                params.resample_var = value;
            else
                params.discount = value;
            auto tracker = make_tracker(TrackerKind::NormalHedge, world, params, spec.base_seed,
                                        trial_index);
            out.push_back(track_rmse(*tracker, trace));
        }
    } else {
        for (TrackerKind kind : plan.kinds) {
            auto tracker = make_tracker(kind, world, spec.params, spec.base_seed, trial_index);
            out.push_back(track_rmse(*tracker, trace));
        }
    }
    return out;
}

}  // namespace

std::map<TrackerKind, double> run_trial(const ExperimentSpec& spec, std::size_t trial_index) {
    if (trial_index >= spec.trials) throw std::out_of_range("run_trial: trial_index >= trials");
    const Trace trace = trial_trace(spec.world, spec.base_seed, trial_index);
    std::map<TrackerKind, double> result;
    for (TrackerKind kind : canonical_order(spec.trackers)) {
        auto tracker = make_tracker(kind, spec.world, spec.params, spec.base_seed, trial_index);
        result[kind] = track_rmse(*tracker, trace);
    }
    return result;
}

void summarize(CellResult& cell) {
    const auto n = cell.trial_rmse.size();
    if (n == 0) throw std::invalid_argument("summarize: no trials");
    double sum = 0.0;
    for (double v : cell.trial_rmse) sum += v;
    cell.mean_rmse = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : cell.trial_rmse) ss += (v - cell.mean_rmse) * (v - cell.mean_rmse);
    cell.std_rmse = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
}

AggregateResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    TaskPlan plan;
    if (spec.sweep)
        plan.sweep = spec.sweep;
    else
        plan.kinds = canonical_order(spec.trackers);
    const std::size_t columns = plan.sweep ? plan.sweep->values.size() : plan.kinds.size();

    std::vector<double> rhos = spec.rho_list;
    std::sort(rhos.begin(), rhos.end());

    const std::size_t n_tasks = rhos.size() * spec.trials;
    std::vector<std::vector<double>> task_rmse(n_tasks);
    std::vector<std::string> failures(n_tasks);

    const auto n_tasks_signed = static_cast<std::ptrdiff_t>(n_tasks);
#pragma omp parallel for schedule(dynamic) num_threads(spec.workers)
    for (std::ptrdiff_t task = 0; task < n_tasks_signed; ++task) {
        const auto rho_index = static_cast<std::size_t>(task) / spec.trials;
        const auto trial = static_cast<std::size_t>(task) % spec.trials;
        try {
            task_rmse[task] = run_task(spec, plan, rhos[rho_index], trial);
        } catch (const std::exception& e) {
            failures[task] = e.what();
        }
    }
    for (std::size_t task = 0; task < n_tasks; ++task) {
        if (!failures[task].empty()) {
            throw std::runtime_error("trial " + std::to_string(task % spec.trials) + " (rho=" +
                                     std::to_string(rhos[task / spec.trials]) +
                                     ") failed: " + failures[task]);
        }
    }

    AggregateResult result;
    for (std::size_t col = 0; col < columns; ++col) {
        for (std::size_t r = 0; r < rhos.size(); ++r) {
            CellResult cell;
            cell.sigma_o = spec.world.noise_scale;
            cell.rho = rhos[r];
            if (plan.sweep) {
                cell.tracker = TrackerKind::NormalHedge;
                cell.sweep_param = plan.sweep->param;
                cell.sweep_value = plan.sweep->values[col];
            } else {
                cell.tracker = plan.kinds[col];
            }
            cell.trial_rmse.reserve(spec.trials);
            for (std::size_t trial = 0; trial < spec.trials; ++trial)
                cell.trial_rmse.push_back(task_rmse[r * spec.trials + trial][col]);
            summarize(cell);
            result.cells.push_back(std::move(cell));
        }
    }
    if (plan.sweep) {
        // tracker, rho, then sweep value
        std::stable_sort(result.cells.begin(), result.cells.end(),
                         [](const CellResult& a, const CellResult& b) { return a.rho < b.rho; });
    }
    return result;
}

}  // namespace nhtrack
