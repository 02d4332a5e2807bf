#include "nhtrack/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nhtrack::hedge {

namespace {

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

double max_positive(std::span<const double> regrets) {
    double m = 0.0;
    for (double r : regrets) m = std::max(m, positive_part(r));
    return m;
}

// exp() that saturates instead of producing inf.
inline double saturating_exp(double x) {
    constexpr double kMaxExponent = 709.0;
    return x > kMaxExponent ? std::numeric_limits<double>::max() : std::exp(x);
}

}  // namespace

double potential(std::span<const double> regrets, double c) {
    if (regrets.empty()) throw std::invalid_argument("potential: no actions");
    double total = 0.0;
    for (double r : regrets) {
        const double rp = positive_part(r);
        total += saturating_exp(rp * rp / (2.0 * c));
    }
    return total / static_cast<double>(regrets.size());
}

std::optional<PotentialSolution> solve_potential(std::span<const double> regrets) {
    const double rmax = max_positive(regrets);
    if (rmax <= 0.0) return std::nullopt;

    const double target = std::numbers::e;
    const double n = static_cast<double>(regrets.size());
    auto residual = [&](double c) { return potential(regrets, c) - target; };

    // At c = rmax^2 / 2 the largest term equals e and no term exceeds it, so the
    // mean is at most e. At c = rmax^2 / (2 (1 + ln N)) the largest term alone
    // contributes e. The doubling loop only matters for the all-equal edge case
    // under rounding.
    double hi = rmax * rmax / 2.0;
    double lo = rmax * rmax / (2.0 * (1.0 + std::log(n)));
    while (residual(hi) > 0.0) hi *= 2.0;
    while (residual(lo) < 0.0) lo /= 2.0;

    PotentialSolution best{hi, std::abs(residual(hi))};
    for (int step = 0; step < kMaxBisectionSteps && best.residual > kPotentialTolerance; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f = residual(mid);
        if (std::abs(f) < best.residual) best = {mid, std::abs(f)};
        if (f > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double f_lo = std::abs(residual(lo));
    if (f_lo < best.residual) best = {lo, f_lo};
    return best;
}

std::optional<PotentialSolution> weights_from_regrets(std::span<const double> regrets,
                                                      std::span<double> weights) {
    if (regrets.size() != weights.size())
        throw std::invalid_argument("weights_from_regrets: output size mismatch");
    if (regrets.empty()) return std::nullopt;

    const auto solution = solve_potential(regrets);
    if (!solution) {
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(regrets.size()));
        return std::nullopt;
    }
    const double c = solution->c;
    double total = 0.0;
    for (std::size_t i = 0; i < regrets.size(); ++i) {
        const double rp = positive_part(regrets[i]);
        weights[i] = rp > 0.0 ? (rp / c) * saturating_exp(rp * rp / (2.0 * c)) : 0.0;
        total += weights[i];
    }
    for (double& w : weights) w /= total;
    return solution;
}

std::vector<double> weights_from_regrets(std::span<const double> regrets) {
    std::vector<double> weights(regrets.size());
    weights_from_regrets(regrets, weights);
    return weights;
}

double mixture_loss(std::span<const double> weights, std::span<const double> losses) {
    if (weights.size() != losses.size())
        throw std::invalid_argument("mixture_loss: length mismatch");
    if (losses.empty()) return 0.0;
    const double ref = losses[0];
    double offset = 0.0;
    for (std::size_t i = 0; i < losses.size(); ++i) offset += weights[i] * (losses[i] - ref);
    return ref + offset;
}

HedgeState::HedgeState(std::size_t n_actions, double discount)
    : regrets_(n_actions, 0.0),
      weights_(n_actions, n_actions ? 1.0 / static_cast<double>(n_actions) : 0.0),
      discount_(discount) {
    if (n_actions == 0) throw std::invalid_argument("HedgeState: need at least one action");
    if (!(discount >= 0.0 && discount < 1.0))
        throw std::invalid_argument("HedgeState: discount must lie in [0, 1)");
}

void HedgeState::set_regrets(std::span<const double> regrets) {
    if (regrets.size() != regrets_.size())
        throw std::invalid_argument("HedgeState::set_regrets: length mismatch");
    std::copy(regrets.begin(), regrets.end(), regrets_.begin());
    weights_from_regrets(regrets_, weights_);
}

RoundOutcome hedge_round(HedgeState state, std::span<const double> losses) {
    if (losses.size() != state.n_actions())
        throw std::invalid_argument("hedge_round: losses length does not match the action count");
    for (double loss : losses)
        if (!std::isfinite(loss)) throw std::invalid_argument("hedge_round: non-finite loss");
    const double algorithm_loss = mixture_loss(state.weights_, losses);
    const double keep = 1.0 - state.discount_;
    for (std::size_t i = 0; i < losses.size(); ++i)
        state.regrets_[i] = keep * state.regrets_[i] + (algorithm_loss - losses[i]);
    weights_from_regrets(state.regrets_, state.weights_);
    return {std::move(state), algorithm_loss};
}

double regret_to_quantile(std::span<const double> action_cum_losses, double algorithm_cum_loss,
                          double epsilon) {
    if (action_cum_losses.empty()) throw std::invalid_argument("regret_to_quantile: no actions");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("regret_to_quantile: epsilon must lie in (0, 1]");
    const auto n = action_cum_losses.size();
    // Small slack so that epsilon = k/N is not pushed to k+1 by rounding.
    auto rank = static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(n) - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, n);
    std::vector<double> sorted(action_cum_losses.begin(), action_cum_losses.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                     sorted.end());
    return algorithm_cum_loss - sorted[rank - 1];
}

}  // namespace nhtrack::hedge
