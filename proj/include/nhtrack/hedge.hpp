#pragma once

// NormalHedge over a finite set of abstract actions, with optional geometric
// discounting of past regret. Independent of the tracking problem.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nhtrack::hedge {

/// Scale parameter c of the NormalHedge potential together with how closely
/// (1/N) sum exp([R]+^2 / 2c) reproduces e at that c.
struct PotentialSolution {
    double c = 0.0;
    double residual = 0.0;
};

inline constexpr double kPotentialTolerance = 1e-9;
inline constexpr int kMaxBisectionSteps = 200;

/// (1/N) sum_i exp(([R_i]+)^2 / (2c)). Exponents saturate at the largest
/// finite double instead of overflowing.
double potential(std::span<const double> regrets, double c);

/// Solves potential(regrets, c) = e. Returns nullopt when no regret is
/// strictly positive: the left side is then identically 1 and has no root.
std::optional<PotentialSolution> solve_potential(std::span<const double> regrets);

/// NormalHedge distribution for the given regrets, written into `weights`.
/// Falls back to uniform when every regret is nonpositive. Returns the solved
/// scale, or nullopt on the uniform fallback.
std::optional<PotentialSolution> weights_from_regrets(std::span<const double> regrets,
                                                      std::span<double> weights);

std::vector<double> weights_from_regrets(std::span<const double> regrets);

/// Weight-averaged loss, accumulated as offsets from the first loss so that
/// equal losses give back exactly that loss (and zero regret increments).
double mixture_loss(std::span<const double> weights, std::span<const double> losses);

struct RoundOutcome;

/// Regrets and weights of a (discounted) NormalHedge learner.
class HedgeState {
public:
    /// Fresh learner: zero regret, uniform weights. discount must be in [0, 1).
    explicit HedgeState(std::size_t n_actions, double discount = 0.0);

    std::size_t n_actions() const { return regrets_.size(); }
    double discount() const { return discount_; }
    std::span<const double> regrets() const { return regrets_; }
    std::span<const double> weights() const { return weights_; }

    /// Replaces the regrets and recomputes the matching weights.
    void set_regrets(std::span<const double> regrets);

private:
    friend RoundOutcome hedge_round(HedgeState state, std::span<const double> losses);

    std::vector<double> regrets_;
    std::vector<double> weights_;
    double discount_ = 0.0;
};

struct RoundOutcome {
    HedgeState state;
    double algorithm_loss = 0.0;
};

/// One round: the learner pays the weight-averaged loss, regrets become
///   R_i <- (1 - discount) R_i + (algorithm_loss - loss_i),
/// and the weights are recomputed. Throws std::invalid_argument on a length
/// mismatch or a non-finite loss.
RoundOutcome hedge_round(HedgeState state, std::span<const double> losses);

/// Algorithm cumulative loss minus the ceil(epsilon N)-th smallest action
/// cumulative loss. Throws on empty input or epsilon outside (0, 1].
double regret_to_quantile(std::span<const double> action_cum_losses, double algorithm_cum_loss,
                          double epsilon);

}  // namespace nhtrack::hedge
