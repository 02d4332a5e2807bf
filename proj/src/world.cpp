#include "nhtrack/world.hpp"

#include "nhtrack/report.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <fstream>
#include <stdexcept>

namespace nhtrack {

void WorldConfig::validate() const {
    if (!(outlier_frac >= 0.0 && outlier_frac <= 1.0))
        throw std::invalid_argument("WorldConfig: outlier_frac must lie in [0, 1]");
    if (horizon < 1) throw std::invalid_argument("WorldConfig: horizon must be >= 1");
    if (!(noise_scale >= 0.0)) throw std::invalid_argument("WorldConfig: noise_scale must be >= 0");
    if (grid.min >= grid.max) throw std::invalid_argument("WorldConfig: empty grid");
    if (half_width < 0) throw std::invalid_argument("WorldConfig: half_width must be >= 0");
}

int pulse(int x, double z, int half_width) {
    return std::abs(static_cast<double>(x) - z) <= static_cast<double>(half_width) ? 1 : 0;
}

double sample_noise(Rng& rng, double noise_scale, double outlier_frac) {
    const bool outlier = rng.bernoulli(outlier_frac);
    const double scale = outlier ? kOutlierScale * noise_scale : noise_scale;
    return scale * rng.normal();
}

std::vector<double> gen_trajectory(const WorldConfig& cfg, Rng& rng) {
    cfg.validate();
    const double bound = std::min({kReflectionBound, static_cast<double>(cfg.grid.max),
                                   -static_cast<double>(cfg.grid.min)});
    constexpr auto n_choices = std::size(kVelocityChoices);

    auto draw_velocity = [&] {
        auto k = static_cast<std::size_t>(rng.uniform() * n_choices);
        return kVelocityChoices[std::min(k, n_choices - 1)];
    };

    std::vector<double> z(static_cast<std::size_t>(cfg.horizon));
    z[0] = 0.0;
    double velocity = draw_velocity();
    auto remaining = rng.geometric(1.0 / kMeanSegmentLength);
    for (std::size_t t = 1; t < z.size(); ++t) {
        if (remaining == 0) {
            velocity = draw_velocity();
            remaining = rng.geometric(1.0 / kMeanSegmentLength);
        }
        double next = z[t - 1] + velocity;
        if (next > bound) {
            next = 2.0 * bound - next;
            velocity = -velocity;
        } else if (next < -bound) {
            next = -2.0 * bound - next;
            velocity = -velocity;
        }
        z[t] = next;
        --remaining;
    }
    return z;
}

MeasurementFrame gen_measurements(double z, const WorldConfig& cfg, Rng& rng) {
    MeasurementFrame frame(cfg.grid.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        frame[i] = pulse(cfg.grid.cell(i), z, cfg.half_width) +
                   sample_noise(rng, cfg.noise_scale, cfg.outlier_frac);
    }
    return frame;
}

Trace simulate(const WorldConfig& cfg, Rng& rng) {
    Trace trace;
    trace.true_states = gen_trajectory(cfg, rng);
    trace.frames.reserve(trace.true_states.size());
    for (double z : trace.true_states) trace.frames.push_back(gen_measurements(z, cfg, rng));
    return trace;
}

Trace simulate(const WorldConfig& cfg) {
    Rng rng(cfg.seed);
    return simulate(cfg, rng);
}

void write_trace_csv(const Trace& trace, const Grid& grid, bool include_frames,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "t,z_t";
    if (include_frames)
        for (std::size_t i = 0; i < grid.size(); ++i) out << ",m_" << grid.cell(i);
    out << '\n';
    for (std::size_t t = 0; t < trace.horizon(); ++t) {
        out << (t + 1) << ',' << format_number(trace.true_states[t]);
        if (include_frames)
            for (double m : trace.frames[t]) out << ',' << format_number(m);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace nhtrack
