#pragma once

#include <cstdint>
#include <random>

namespace nhtrack {

/// Independent consumers of randomness within one trial.
enum class Stream : std::uint32_t {
    World = 0,
    NormalHedge = 1,
    ParticleFilter = 2,
};

/// 64-bit Mersenne Twister with the few draws the simulator needs. Streams
/// are derived from (base seed, trial index, stream tag) through seed_seq, so
/// a trial's randomness does not depend on which thread runs it or on which
/// other consumers exist.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    Rng(std::uint64_t base_seed, std::uint64_t trial_index, Stream stream);

    double normal() { return normal_(engine_); }
    double normal(double mean, double stddev) { return mean + stddev * normal_(engine_); }
    /// Uniform on [0, 1).
    double uniform() { return std::generate_canonical<double, 53>(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    bool bernoulli(double p) { return uniform() < p; }
    /// Number of trials up to and including the first success.
    std::uint64_t geometric(double p);
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace nhtrack
