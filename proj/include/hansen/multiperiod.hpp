/**
 * @file multiperiod.hpp
 * @brief n-period frontier statistics for IID returns
 *
 * With IID one-period returns the unconditional n-period special portfolios
 * follow from the one-period (mu_Y, omega_Y^2, HR_X^2) alone:
 *
 *     mu_Y~ = mu_Y^n,  omega_Y~^2 = omega_Y^(2n),  HR_Y~^2 = HR_Y^(2n),
 *     1 - HR_X~^2 - HR_Y~^2 = (1 - HR_X^2 - HR_Y^2) sum_{t<n} HR_Y^(2t).
 *
 * tree_oracle() recomputes the same numbers by brute force on the full
 * product scenario tree.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hansen/frontier.hpp"

namespace hansen {

inline constexpr std::size_t kMaxTreeLeaves = 100000;

struct MultiperiodStats {
    int periods = 1;
    double mu_Y = 0.0;
    double omega_sq_Y = 0.0;
    double hr_sq_Y = 0.0;
    double hr_sq_X = 0.0;

    FrontierStats frontier_stats() const noexcept { return {mu_Y, omega_sq_Y, hr_sq_X}; }
};

/// sum_{t=0}^{n-1} ratio^t, with the ratio == 1 branch returning n.
double geometric_sum(double ratio, int n);

/// Throws InvalidHorizon when n < 1, InvalidInput when the one-period
/// statistics violate HR^2_X + HR^2_Y <= 1.
MultiperiodStats propagate(const FrontierStats& one_period, int n);
MultiperiodStats propagate(const SpecialPortfolios& one_period, int n);

/// IID product tree over a one-period state space. Leaves are visited
/// depth-first in lexicographic path order.
class ScenarioTree {
public:
    /// Throws InvalidHorizon, TreeTooLarge (more than kMaxTreeLeaves leaves).
    ScenarioTree(std::vector<double> probabilities, int periods);

    int periods() const noexcept { return periods_; }
    std::size_t states() const noexcept { return probabilities_.size(); }
    std::size_t leaf_count() const noexcept { return leaves_; }

    /// f(path, probability) with path[t] the state index of period t + 1.
    template <class F>
    void for_each_leaf(F&& f) const {
        std::vector<std::size_t> path(static_cast<std::size_t>(periods_), 0);
        const std::size_t k = probabilities_.size();
        for (std::size_t leaf = 0; leaf < leaves_; ++leaf) {
            double prob = 1.0;
            for (std::size_t idx : path) prob *= probabilities_[idx];
            f(std::span<const std::size_t>(path), prob);
            for (std::size_t t = path.size(); t-- > 0;) {
                if (++path[t] < k) break;
                path[t] = 0;
            }
        }
    }

private:
    std::vector<double> probabilities_;
    int periods_;
    std::size_t leaves_;
};

struct TreeOracleResult {
    MultiperiodStats stats;
    double mu_X = 0.0;          ///< E[X~]
    double omega_sq_X = 0.0;    ///< E[X~^2]
    /// Moments of the mix X~ + (mu_Y~ / omega_Y~^2) Y~.
    double mix_mean = 0.0;
    double mix_second_moment = 0.0;
    std::size_t leaves = 0;
};

/// Brute-force n-period statistics on the product tree of a scenario-backed
/// market. Throws NotScenarioBacked, InvalidHorizon, TreeTooLarge.
TreeOracleResult tree_oracle(const GramMarket& one_period, int n);

/// Throws ArbitrageDetected when HR^2_X~ reaches 1.
FrontierCoefficients multiperiod_frontier(const MultiperiodStats& mp);

}  // namespace hansen
