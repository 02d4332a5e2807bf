// nhtrack: robustness-to-outliers experiments for the NormalHedge tracker.
//
//   nhtrack bench    --sigma-o 1 --rho-list 0,0.01,0.05 --trackers nh,bayes,pf --trials 100 --seed 1 --out results
//   nhtrack simulate --sigma-o 1 --rho 0.1 --seed 7 --out trace.csv [--frames] [--tracker-traces]
//   nhtrack sweep    --param sigma-star --values 100,400,900 --sigma-o 1 --rho 0.1 --trials 20 --seed 1 --out sweep

#include "nhtrack/experiment.hpp"
#include "nhtrack/report.hpp"
#include "nhtrack/world.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace nhtrack;

struct CommonOptions {
    double sigma_o = 1.0;
    std::string nh_init = "prior";
    std::uint64_t seed = 0;
    int half_width = 50;
    int horizon = 200;
    TrackerParams params;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--sigma-o", opts.sigma_o, "Inlier noise standard deviation")->required();
    cmd->add_option("--seed", opts.seed, "Base seed (u64)")->required();
    cmd->add_option("--half-width", opts.half_width, "Pulse / loss window half width W")
        ->capture_default_str();
    cmd->add_option("--horizon", opts.horizon, "Time steps per trial")->capture_default_str();
    cmd->add_option("--nh-init", opts.nh_init, "NH start: prior (all at z_1 = 0) or uniform")
        ->check(CLI::IsMember({"prior", "uniform"}))->capture_default_str();
    cmd->add_option("--actions", opts.params.n_actions, "NH action count")->capture_default_str();
    cmd->add_option("--alpha", opts.params.discount, "NH discount factor")->capture_default_str();
    cmd->add_option("--sigma-star", opts.params.resample_var, "NH resampling variance")
        ->capture_default_str();
    cmd->add_option("--sigma-d", opts.params.transition_sigma, "Bayes/PF transition std")
        ->capture_default_str();
    cmd->add_option("--particles", opts.params.n_particles, "PF particle count")
        ->capture_default_str();
}

WorldConfig make_world(const CommonOptions& opts, double rho) {
    WorldConfig world;
    world.noise_scale = opts.sigma_o;
    world.outlier_frac = rho;
    world.half_width = opts.half_width;
    world.horizon = opts.horizon;
    world.seed = opts.seed;
    return world;
}

void print_summary(const AggregateResult& result) {
    for (const auto& cell : result.cells) {
        std::cerr << to_string(cell.tracker) << " sigma_o=" << format_number(cell.sigma_o)
                  << " rho=" << format_number(cell.rho);
        if (cell.sweep_param)
            std::cerr << ' ' << to_string(*cell.sweep_param) << '='
                      << format_number(cell.sweep_value);
        std::cerr << "  rmse " << cell.mean_rmse << " +- " << cell.std_rmse << '\n';
    }
}

void run_simulate(const CommonOptions& opts, double rho, const std::string& out, bool frames,
                  bool tracker_traces) {
    const WorldConfig world = make_world(opts, rho);
    world.validate();
    const Trace trace = trial_trace(world, opts.seed, 0);
    write_trace_csv(trace, world.grid, frames, out);
    std::cerr << "wrote " << out << '\n';
    if (!tracker_traces) return;

    const std::filesystem::path base(out);
    for (TrackerKind kind : {TrackerKind::NormalHedge, TrackerKind::Bayes, TrackerKind::Particle}) {
        auto tracker = make_tracker(kind, world, opts.params, opts.seed, 0);
        std::vector<TrackerTraceRow> rows;
        rows.reserve(trace.horizon());
        for (std::size_t t = 0; t < trace.horizon(); ++t) {
            const double estimate = tracker->step(trace.frames[t]);
            const auto diag = tracker->diagnostics();
            rows.push_back({trace.true_states[t], estimate, diag.deleted, diag.potential_scale,
                            diag.effective_sample_size, diag.weight_collapse});
        }
        auto path = base;
        path.replace_filename(base.stem().string() + "_" + std::string(to_string(kind)) + ".csv");
        write_tracker_trace_csv(rows, path);
        std::cerr << "wrote " << path.string() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NormalHedge tracking experiments"};
    app.require_subcommand(1);

    CommonOptions bench_opts;
    std::vector<double> rho_list{0.0, 0.01, 0.05, 0.10, 0.15, 0.20};
    std::vector<std::string> tracker_names{"nh", "bayes", "pf"};
    std::size_t trials = 100;
    std::string bench_out;
    std::string format = "csv";
    int workers = 1;
    auto* bench = app.add_subcommand("bench", "Monte Carlo RMSE table over rho values");
    add_common(bench, bench_opts);
    bench->add_option("--rho-list", rho_list, "Outlier fractions")->delimiter(',')->capture_default_str();
    bench->add_option("--trackers", tracker_names, "Subset of nh,bayes,pf")->delimiter(',');
    bench->add_option("--trials", trials, "Trials per cell")->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory")->required();
    bench->add_option("--format", format, "csv or md")->check(CLI::IsMember({"csv", "md"}))
        ->capture_default_str();
    bench->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber)
        ->capture_default_str();

    CommonOptions sim_opts;
    double sim_rho = 0.0;
    std::string sim_out;
    bool frames = false;
    bool tracker_traces = false;
    auto* sim = app.add_subcommand("simulate", "Write one world trace (and optional tracker traces)");
    add_common(sim, sim_opts);
    sim->add_option("--rho", sim_rho, "Outlier fraction")->required();
    sim->add_option("--out", sim_out, "Trace CSV path")->required();
    sim->add_flag("--frames", frames, "Include the per-cell measurements");
    sim->add_flag("--tracker-traces", tracker_traces,
                  "Also write <out-stem>_{nh,bayes,pf}.csv with per-step estimates");

    CommonOptions sweep_opts;
    std::string sweep_param;
    std::vector<double> sweep_values;
    double sweep_rho = 0.0;
    std::size_t sweep_trials = 100;
    std::string sweep_out;
    int sweep_workers = 1;
    auto* sweep = app.add_subcommand("sweep", "NH RMSE over values of sigma-star or alpha");
    add_common(sweep, sweep_opts);
    sweep->add_option("--param", sweep_param, "sigma-star or alpha")
        ->check(CLI::IsMember({"sigma-star", "alpha"}))->required();
    sweep->add_option("--values", sweep_values, "Values to sweep")->delimiter(',')->required();
    sweep->add_option("--rho", sweep_rho, "Outlier fraction")->required();
    sweep->add_option("--trials", sweep_trials, "Trials per value")->capture_default_str();
    sweep->add_option("--out", sweep_out, "Output directory")->required();
    sweep->add_option("--workers", sweep_workers, "Worker threads")->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    for (auto* opts : {&bench_opts, &sim_opts, &sweep_opts})
        opts->params.nh_init = parse_nh_init(opts->nh_init);

    try {
        if (*bench) {
            ExperimentSpec spec;
            spec.world = make_world(bench_opts, 0.0);
            spec.trackers.clear();
            for (const auto& name : tracker_names) spec.trackers.push_back(parse_tracker(name));
            spec.trials = trials;
            spec.rho_list = rho_list;
            spec.base_seed = bench_opts.seed;
            spec.params = bench_opts.params;
            spec.workers = workers;
            const auto result = run_experiment(spec);
            for (const auto& path : emit_results(result, parse_format(format), bench_out))
                std::cerr << "wrote " << path.string() << '\n';
            print_summary(result);
        } else if (*sim) {
            run_simulate(sim_opts, sim_rho, sim_out, frames, tracker_traces);
        } else if (*sweep) {
            ExperimentSpec spec;
            spec.world = make_world(sweep_opts, sweep_rho);
            spec.trials = sweep_trials;
            spec.rho_list = {sweep_rho};
            spec.sweep = Sweep{parse_sweep_param(sweep_param), sweep_values};
            spec.base_seed = sweep_opts.seed;
            spec.params = sweep_opts.params;
            spec.workers = sweep_workers;
            const auto result = run_experiment(spec);
            for (const auto& path : emit_results(result, OutputFormat::Csv, sweep_out))
                std::cerr << "wrote " << path.string() << '\n';
            print_summary(result);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
