#pragma once

// Data-parallel inner loops used by the trackers. Every kernel has a serial
// reference and an OpenMP version; for a given input both produce the same
// bits, which the unit tests and the benchmark rely on.
//
// When called from inside an already-parallel region (the trial runner), the
// OpenMP versions execute on the calling thread only, since nested
// parallelism is left disabled.

#include <cstddef>
#include <cstdint>
#include <span>

namespace nhtrack::kernels {

/// out[i] = sum of values[j] for j in [i - half_width, i + half_width],
/// truncated at both ends. Serial version uses a running prefix sum.
void window_sums_serial(std::span<const std::int64_t> values, int half_width,
                        std::span<std::int64_t> out);

/// Same contract; each output cell sums its own window directly.
void window_sums_parallel(std::span<const std::int64_t> values, int half_width,
                          std::span<std::int64_t> out);

/// Floating-point window sums through a prefix array. Not order-stable, so
/// there is no parallel twin; callers only need it to O(n) accuracy.
void window_sums(std::span<const double> values, int half_width, std::span<double> out);

/// Gather-form truncated convolution:
///   out[j] = sum_k taps[k] * in[j - (k - radius)],  radius = (taps.size() - 1) / 2,
/// skipping source indices outside [0, in.size()). taps.size() must be odd.
void convolve_serial(std::span<const double> in, std::span<const double> taps,
                     std::span<double> out);
void convolve_parallel(std::span<const double> in, std::span<const double> taps,
                       std::span<double> out);

/// out[i] = exp(log_values[i] - shift); returns the sum of out.
double exp_shifted_serial(std::span<const double> log_values, double shift, std::span<double> out);
double exp_shifted_parallel(std::span<const double> log_values, double shift,
                            std::span<double> out);

}  // namespace nhtrack::kernels
