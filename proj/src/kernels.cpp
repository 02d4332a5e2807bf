#include "nhtrack/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nhtrack::kernels {

namespace {

void check_sizes(std::size_t in, std::size_t out) {
    if (in != out) throw std::invalid_argument("kernels: input and output sizes differ");
}

}  // namespace

void window_sums_serial(std::span<const std::int64_t> values, int half_width,
                        std::span<std::int64_t> out) {
    check_sizes(values.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    std::vector<std::int64_t> prefix(values.size() + 1, 0);
    for (std::ptrdiff_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + values[i];
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto lo = std::max<std::ptrdiff_t>(0, i - half_width);
        const auto hi = std::min<std::ptrdiff_t>(n - 1, i + half_width);
        out[i] = prefix[hi + 1] - prefix[lo];
    }
}

void window_sums_parallel(std::span<const std::int64_t> values, int half_width,
                          std::span<std::int64_t> out) {
    check_sizes(values.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto lo = std::max<std::ptrdiff_t>(0, i - half_width);
        const auto hi = std::min<std::ptrdiff_t>(n - 1, i + half_width);
        std::int64_t acc = 0;
        for (auto j = lo; j <= hi; ++j) acc += values[j];
        out[i] = acc;
    }
}

void window_sums(std::span<const double> values, int half_width, std::span<double> out) {
    check_sizes(values.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    std::vector<double> prefix(values.size() + 1, 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + values[i];
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto lo = std::max<std::ptrdiff_t>(0, i - half_width);
        const auto hi = std::min<std::ptrdiff_t>(n - 1, i + half_width);
        out[i] = prefix[hi + 1] - prefix[lo];
    }
}

namespace {

inline double convolve_at(std::span<const double> in, std::span<const double> taps,
                          std::ptrdiff_t j) {
    const auto n = static_cast<std::ptrdiff_t>(in.size());
    const auto radius = static_cast<std::ptrdiff_t>(taps.size() - 1) / 2;
    double acc = 0.0;
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(taps.size()); ++k) {
        const auto src = j - (k - radius);
        if (src >= 0 && src < n) acc += taps[k] * in[src];
    }
    return acc;
}

void check_taps(std::span<const double> taps) {
    if (taps.size() % 2 == 0) throw std::invalid_argument("kernels: tap count must be odd");
}

}  // namespace

void convolve_serial(std::span<const double> in, std::span<const double> taps,
                     std::span<double> out) {
    check_sizes(in.size(), out.size());
    check_taps(taps);
    const auto n = static_cast<std::ptrdiff_t>(in.size());
    for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = convolve_at(in, taps, j);
}

void convolve_parallel(std::span<const double> in, std::span<const double> taps,
                       std::span<double> out) {
    check_sizes(in.size(), out.size());
    check_taps(taps);
    const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = convolve_at(in, taps, j);
}

double exp_shifted_serial(std::span<const double> log_values, double shift, std::span<double> out) {
    check_sizes(log_values.size(), out.size());
    double total = 0.0;
    for (std::size_t i = 0; i < log_values.size(); ++i) {
        out[i] = std::exp(log_values[i] - shift);
        total += out[i];
    }
    return total;
}

double exp_shifted_parallel(std::span<const double> log_values, double shift,
                            std::span<double> out) {
    check_sizes(log_values.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(log_values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = std::exp(log_values[i] - shift);
    // The sum stays sequential so it matches the serial reference bit for bit.
    double total = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) total += out[i];
    return total;
}

}  // namespace nhtrack::kernels
