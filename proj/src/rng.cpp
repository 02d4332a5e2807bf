#include "nhtrack/rng.hpp"

#include <stdexcept>

namespace nhtrack {

namespace {

std::mt19937_64 seeded_engine(std::initializer_list<std::uint32_t> words) {
    std::seed_seq seq(words);
    return std::mt19937_64(seq);
}

inline std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
inline std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded_engine({lo32(seed), hi32(seed)})) {}

Rng::Rng(std::uint64_t base_seed, std::uint64_t trial_index, Stream stream)
    : engine_(seeded_engine({lo32(base_seed), hi32(base_seed), lo32(trial_index),
                             hi32(trial_index), static_cast<std::uint32_t>(stream),
                             0x9e3779b9u})) {}

std::uint64_t Rng::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("Rng::geometric: p must lie in (0, 1]");
    std::geometric_distribution<std::uint64_t> dist(p);
    return dist(engine_) + 1;
}

}  // namespace nhtrack
