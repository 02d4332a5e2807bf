#include "nhtrack/hedge.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace nhtrack::hedge {
namespace {

// Independent root finder: plain bisection on the potential in long double
// over a fixed wide bracket, sharing no code with solve_potential.
long double oracle_c(const std::vector<double>& regrets) {
    auto f = [&](long double c) {
        long double s = 0;
        for (double r : regrets) {
            const long double rp = r > 0 ? r : 0;
            s += std::exp(rp * rp / (2 * c));
        }
        return s / regrets.size() - std::numbers::e_v<long double>;
    };
    long double lo = 1e-6L, hi = 1e6L;
    for (int i = 0; i < 400; ++i) {
        const long double mid = (lo + hi) / 2;
        (f(mid) > 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

TEST(SolvePotential, SingleActionClosedForm) {
    const std::vector<double> r{2.0};
    const auto sol = solve_potential(r);
    ASSERT_TRUE(sol);
    EXPECT_NEAR(sol->c, 2.0, 1e-9);
    EXPECT_LE(sol->residual, kPotentialTolerance);
}

TEST(SolvePotential, SymmetricPair) {
    const std::vector<double> r{1.0, 1.0};
    const auto sol = solve_potential(r);
    ASSERT_TRUE(sol);
    EXPECT_NEAR(sol->c, 0.5, 1e-9);
}

TEST(SolvePotential, OnePositiveOneZero) {
    // Frozen from a 30-digit bisection; equals 2 / ln(2e - 1).
    const std::vector<double> r{2.0, 0.0};
    const auto sol = solve_potential(r);
    ASSERT_TRUE(sol);
    EXPECT_NEAR(sol->c, 1.34238987793363, 1e-8);
    EXPECT_NEAR(sol->c, 2.0 / std::log(2.0 * std::numbers::e - 1.0), 1e-8);
    EXPECT_NEAR(sol->c, static_cast<double>(oracle_c(r)), 1e-8);
}

TEST(SolvePotential, AllNonPositiveHasNoSolution) {
    EXPECT_FALSE(solve_potential(std::vector<double>{0.0, -1.0, -3.0}));
    EXPECT_FALSE(solve_potential(std::vector<double>{0.0}));
}

TEST(SolvePotential, ResidualAndBracketOnRandomVectors) {
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> size(2, 200);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> r(static_cast<std::size_t>(size(gen)));
        for (double& x : r) x = value(gen);
        r[0] = std::abs(r[0]) + 1e-3;
        const auto sol = solve_potential(r);
        ASSERT_TRUE(sol);
        EXPECT_LE(sol->residual, kPotentialTolerance);
        EXPECT_NEAR(std::abs(potential(r, sol->c) - std::numbers::e), sol->residual, 1e-12);
        EXPECT_GT(potential(r, sol->c / 2), std::numbers::e);
        EXPECT_LT(potential(r, sol->c * 2), std::numbers::e);
    }
}

TEST(Potential, SaturatesInsteadOfOverflowing) {
    const std::vector<double> r{1e6, 1.0};
    EXPECT_TRUE(std::isfinite(potential(r, 1e-3)));
}

TEST(Weights, SymmetricRegretsGiveUniform) {
    const auto w = weights_from_regrets(std::vector<double>{1, 1, 1, 1});
    for (double x : w) EXPECT_NEAR(x, 0.25, 1e-15);
}

TEST(Weights, NegativeRegretGetsZeroWeight) {
    const auto w = weights_from_regrets(std::vector<double>{-3, 5});
    EXPECT_EQ(w[0], 0.0);
    EXPECT_DOUBLE_EQ(w[1], 1.0);
}

TEST(Weights, TwoPositiveRegrets) {
    // c = 1.437385 from a 30-digit bisection, then the weight terms normalized.
    const std::vector<double> r{2.0, 1.0};
    std::vector<double> w(2);
    const auto sol = weights_from_regrets(r, w);
    ASSERT_TRUE(sol);
    EXPECT_NEAR(sol->c, 1.43738487317723, 1e-8);
    EXPECT_NEAR(w[0], 0.850268567044923, 1e-9);
    EXPECT_NEAR(w[1], 0.149731432955077, 1e-9);
}

TEST(Weights, AllNonPositiveFallsBackToUniform) {
    std::vector<double> w(3);
    EXPECT_FALSE(weights_from_regrets(std::vector<double>{0.0, -2.0, -1.0}, w));
    for (double x : w) EXPECT_DOUBLE_EQ(x, 1.0 / 3.0);
}

TEST(Weights, SupportMatchesPositiveRegretsAndNeverNegative) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> value(-1e4, 1e4);
    std::uniform_int_distribution<int> size(1, 300);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<double> r(static_cast<std::size_t>(size(gen)));
        for (double& x : r) x = value(gen) * (rep % 3 == 0 ? 1e-4 : 1.0);
        const auto w = weights_from_regrets(r);
        double total = 0.0;
        bool any_positive = false;
        for (double x : r) any_positive = any_positive || x > 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            ASSERT_FALSE(std::isnan(w[i]));
            ASSERT_GE(w[i], 0.0);
            if (any_positive) EXPECT_EQ(w[i] > 0.0, r[i] > 0.0) << "regret " << r[i];
            total += w[i];
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(HedgeRound, EqualLossesLeaveStateUnchanged) {
    HedgeState s(3, 0.0);
    s.set_regrets(std::vector<double>{1.0, 0.5, -2.0});
    const std::vector<double> before(s.weights().begin(), s.weights().end());
    const auto out = hedge_round(s, std::vector<double>{0.1, 0.1, 0.1});
    EXPECT_EQ(out.algorithm_loss, 0.1);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(out.state.regrets()[i], s.regrets()[i]);
        EXPECT_EQ(out.state.weights()[i], before[i]);
    }
}

TEST(HedgeRound, UniformStartOneStep) {
    const auto out = hedge_round(HedgeState(2, 0.0), std::vector<double>{0.0, 1.0});
    EXPECT_DOUBLE_EQ(out.algorithm_loss, 0.5);
    EXPECT_DOUBLE_EQ(out.state.regrets()[0], 0.5);
    EXPECT_DOUBLE_EQ(out.state.regrets()[1], -0.5);
    EXPECT_DOUBLE_EQ(out.state.weights()[0], 1.0);
    EXPECT_EQ(out.state.weights()[1], 0.0);
}

TEST(HedgeRound, DiscountLetsALosingActionRecover) {
    HedgeState s(2, 0.5);
    s.set_regrets(std::vector<double>{2.0, 0.0});
    EXPECT_DOUBLE_EQ(s.weights()[0], 1.0);
    const auto out = hedge_round(s, std::vector<double>{1.0, 0.0});
    EXPECT_DOUBLE_EQ(out.algorithm_loss, 1.0);
    EXPECT_DOUBLE_EQ(out.state.regrets()[0], 1.0);
    EXPECT_DOUBLE_EQ(out.state.regrets()[1], 1.0);
    EXPECT_DOUBLE_EQ(out.state.weights()[0], 0.5);
    EXPECT_DOUBLE_EQ(out.state.weights()[1], 0.5);
}

TEST(HedgeRound, ShiftInvariance) {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> loss(0.0, 1.0);
    HedgeState s(20, 0.1);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> l(20), shifted(20);
        for (std::size_t i = 0; i < 20; ++i) {
            l[i] = loss(gen);
            shifted[i] = l[i] + 3.75;
        }
        const auto a = hedge_round(s, l);
        const auto b = hedge_round(s, shifted);
        for (std::size_t i = 0; i < 20; ++i)
            EXPECT_NEAR(a.state.regrets()[i], b.state.regrets()[i], 1e-12);
        s = a.state;
    }
}

TEST(HedgeRound, RejectsBadInput) {
    EXPECT_THROW(hedge_round(HedgeState(3), std::vector<double>{1, 2}), std::invalid_argument);
    EXPECT_THROW(hedge_round(HedgeState(2), std::vector<double>{1, NAN}), std::invalid_argument);
    EXPECT_THROW(HedgeState(0), std::invalid_argument);
    EXPECT_THROW(HedgeState(2, 1.0), std::invalid_argument);
}

TEST(RegretToQuantile, OrderStatistic) {
    const std::vector<double> losses{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(regret_to_quantile(losses, 3.0, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(regret_to_quantile(losses, 3.0, 0.25), 2.0);  // epsilon = 1/N: best action
    EXPECT_DOUBLE_EQ(regret_to_quantile(losses, 3.0, 1.0), -1.0);
    EXPECT_DOUBLE_EQ(regret_to_quantile(losses, 3.0, 0.01), 2.0);  // ceil keeps the set nonempty
}

TEST(RegretToQuantile, DegenerateLosses) {
    const std::vector<double> losses(7, 4.5);
    for (double eps : {0.1, 0.5, 1.0}) EXPECT_DOUBLE_EQ(regret_to_quantile(losses, 6.0, eps), 1.5);
}

TEST(RegretToQuantile, Errors) {
    EXPECT_THROW(regret_to_quantile({}, 1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(regret_to_quantile(std::vector<double>{1.0}, 1.0, 0.0), std::invalid_argument);
}

TEST(MixtureLoss, ExactForEqualLosses) {
    const std::vector<double> w(100, 0.01);
    const std::vector<double> l(100, -73.123456789);
    EXPECT_EQ(mixture_loss(w, l), -73.123456789);
}

TEST(HedgeRound, RegretEnvelopeOnUniformLosses) {
    constexpr std::size_t n = 50;
    constexpr int horizon = 5000;
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> loss(0.0, 1.0);
    HedgeState s(n, 0.0);
    std::vector<double> cum(n, 0.0), l(n);
    double alg_cum = 0.0;
    for (int t = 0; t < horizon; ++t) {
        for (double& x : l) x = loss(gen);
        auto out = hedge_round(std::move(s), l);
        s = std::move(out.state);
        alg_cum += out.algorithm_loss;
        for (std::size_t i = 0; i < n; ++i) cum[i] += l[i];
    }
    const double regret = regret_to_quantile(cum, alg_cum, 1.0 / n);
    EXPECT_LE(regret, 4.0 * std::sqrt(horizon * std::log(static_cast<double>(n))));
    // Undiscounted regrets are exactly the per-action regrets.
    EXPECT_NEAR(*std::max_element(s.regrets().begin(), s.regrets().end()), regret, 1e-7);
}

}  // namespace
}  // namespace nhtrack::hedge
