/**
 * @file monotone.hpp
 * @brief Monotone Hansen and Sharpe ratios of scenario payoffs
 *
 * The monotone Hansen ratio is the largest Hansen ratio reachable by
 * discarding a non-negative amount of the payoff. For a discrete payoff with
 * positive mean and some downside it equals HR(W ∧ k) for a threshold k that
 * solves
 *
 *     E[W 1{W <= k}] = E[W^2 1{W <= k}] / k.
 *
 * Between consecutive payoff values the clipped moments are polynomial in
 * k, so the optimum on each segment is either the stationary point
 * E[W^2 1{W <= v_j}] / E[W 1{W <= v_j}] or a segment end. The solver scans
 * all segments and keeps the best.
 */

#pragma once

#include <cstdint>
#include <optional>

#include "hansen/market.hpp"

namespace hansen {

struct MonotoneOptions {
    /// Accept W >= 0 (no downside) instead of throwing NoDownside.
    bool allow_no_downside = false;
};

struct MonotoneResult {
    double mhr = 0.0;
    std::optional<double> msr;  ///< nullopt when mhr = 1 (infinite)
    double k_hat = 0.0;         ///< optimal truncation threshold
    double alpha_hat = 0.0;     ///< 1 / k_hat
    bool truncated = false;     ///< k_hat below the largest payoff value
    bool no_downside = false;   ///< input had W >= 0 (only with allow_no_downside)
    double foc_residual = 0.0;  ///< E[W 1{aW<=1}] - a E[W^2 1{aW<=1}] at a = alpha_hat
};

/// Throws NonPositiveMean when E[W] <= 0 and NoDownside when P(W < 0) = 0
/// (unless allowed in options).
MonotoneResult monotone_hansen_ratio(const ScenarioPayoff& w, MonotoneOptions options = {});

/// MHR / sqrt(1 - MHR^2); nullopt when MHR = 1.
std::optional<double> monotone_sharpe_ratio(const ScenarioPayoff& w, MonotoneOptions options = {});

/// x ∧ 1 - (x ∧ 1)^2 / 2
double monotonized_utility(double x);

/// E[U(W)] with the monotonized quadratic utility.
double monotonized_expected_utility(const ScenarioPayoff& w);

struct MonotoneHJOptions {
    std::size_t directions = 10000;
    std::uint64_t seed = 20200101;
    int refinement_steps = 400;
};

struct MonotoneHJReport {
    /// Largest MHR^2 found over zero-cost payoffs. A lower bound on the
    /// supremum since the search is a finite direction grid.
    double sup_mhr_sq = 0.0;
    std::optional<double> sup_msr_sq;  ///< nullopt when sup_mhr_sq = 1
    Vector best_weights;               ///< zero-cost weights of the best direction (empty if none)
    double hr_sq_m = 0.0;
    double hr_bound = 0.0;             ///< 1 - HR^2_m
    double var_over_mean_sq = 0.0;     ///< sigma_m^2 / mu_m^2
    bool hr_pass = false;              ///< sup MHR^2 <= 1 - HR^2_m
    bool variance_pass = false;        ///< sigma_m^2 / mu_m^2 >= sup MSR^2
    bool pass = false;
    std::size_t directions_evaluated = 0;
};

/// Positivity-constrained HJ bound for a non-negative kernel m.
/// Throws NotScenarioBacked, NegativeKernel, NotAKernel.
MonotoneHJReport monotone_hj_bound(const GramMarket& mkt, const ScenarioPayoff& m, MonotoneHJOptions options = {});

}  // namespace hansen
