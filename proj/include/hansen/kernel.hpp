/**
 * @file kernel.hpp
 * @brief Pricing-kernel frontier and Hansen-Jagannathan bounds
 *
 * Every pricing kernel of a scenario market is Y / omega_Y^2 plus an element
 * of the orthogonal complement of the traded space. The efficient kernels
 * are m(eta) = Y / omega_Y^2 + eta V with V = 1 - X - (mu_Y / omega_Y^2) Y,
 * and every kernel satisfies
 *
 *     HR_m^2 <= 1 - HR_X^2,      sigma_m^2 / mu_m^2 >= SR_X^2  (mu_m != 0).
 */

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hansen/market.hpp"

namespace hansen {

/// Pricing errors above this multiple of ||p|| reject a candidate kernel.
inline constexpr double kKernelPricingTolerance = 1e-8;

/// Slack allowed on the bound inequalities.
inline constexpr double kKernelBoundTolerance = 1e-10;

/// |mu_m| at or below this multiple of omega_m skips the variance form.
inline constexpr double kZeroMeanTolerance = 1e-12;

struct KernelFrontier {
    ScenarioPayoff base;       ///< Y / omega_Y^2
    ScenarioPayoff direction;  ///< V, orthogonal to every traded payoff
    double hr_sq_base = 0.0;   ///< HR^2_Y
    double hr_sq_V = 0.0;      ///< 1 - HR^2_X - HR^2_Y
    double hr_sq_X = 0.0;
    /// eta maximizing HR^2_m on the frontier, 1 / mu_Y; nullopt when mu_Y = 0.
    std::optional<double> optimal_eta;

    ScenarioPayoff kernel(double eta) const { return add_scaled(base, eta, direction); }
};

struct KernelDiagnostics {
    double hr_sq_m = 0.0;
    std::optional<double> var_over_mean_sq;  ///< nullopt when mu_m = 0 (see kZeroMeanTolerance)
    double hr_bound = 0.0;
    double variance_bound = 0.0;
    double pricing_error = 0.0;              ///< max_i |E[m B_i] - p_i|
    bool hr_pass = false;
    std::optional<bool> variance_pass;       ///< nullopt when skipped (mu_m = 0)
    bool pass = false;
};

struct HJBoundReport {
    double hr_bound = 0.0;        ///< 1 - HR^2_X
    double variance_bound = 0.0;  ///< SR^2_X
    std::vector<KernelDiagnostics> kernels;
};

/// Throws NotScenarioBacked, ArbitrageDetected, or InternalInvariant when
/// the constructed V fails its orthogonality checks.
KernelFrontier kernel_frontier(const GramMarket& mkt);

/// Throws ArbitrageDetected.
HJBoundReport hj_bounds(const GramMarket& mkt);

/// Bounds plus diagnostics for each candidate kernel.
HJBoundReport hj_bounds(const GramMarket& mkt, std::span<const ScenarioPayoff> kernels);

/// Throws NotScenarioBacked, StateSpaceMismatch, or NotAKernel when some
/// basis payoff is mispriced by more than kKernelPricingTolerance * ||p||.
KernelDiagnostics check_kernel(const ScenarioPayoff& m, const GramMarket& mkt);

/// max_i |E[m B_i] - p_i| over the scenario basis.
double pricing_error(const ScenarioPayoff& m, const GramMarket& mkt);

}  // namespace hansen
