/**
 * @file frontier.hpp
 * @brief Special portfolios X, Y, Z and the efficient frontier
 *
 * Y is the fully invested portfolio of smallest second moment, X the
 * zero-cost projection of the bliss payoff onto the traded zero-cost
 * subspace, and Z = Y + mu_Z X the minimum-variance fully invested
 * portfolio. Every efficient fully invested portfolio is Y + lambda X, which
 * traces the parabolas
 *
 *     omega^2 = omega_Y^2 + HR_X^-2 (mu - mu_Y)^2
 *     sigma^2 = sigma_Z^2 + SR_X^-2 (mu - mu_Z)^2
 *
 * All solves go through the Cholesky factor of the market's Gram matrix.
 */

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hansen/market.hpp"

namespace hansen {

/// HR^2_X at or above 1 - kArbitrageTolerance means 1 is (numerically)
/// a zero-cost payoff.
inline constexpr double kArbitrageTolerance = 1e-10;

/// HR^2_X at or below this value collapses the frontier to a single point.
inline constexpr double kDegenerateTolerance = 1e-14;

/// Tolerance on HR^2_X + HR^2_Y <= 1.
inline constexpr double kHansenBoundTolerance = 1e-10;

struct PortfolioY {
    Vector weights;
    double mean = 0.0;
    double second_moment = 0.0;
};

struct PortfolioX {
    Vector weights;
    double hr_sq = 0.0;
    /// lambda with m - G w_X = lambda p.
    double multiplier = 0.0;
};

struct PortfolioZ {
    Vector weights;
    double mean = 0.0;
    double variance = 0.0;
};

struct SpecialPortfolios {
    Vector w_Y;
    Vector w_X;
    Vector w_Z;
    double mu_Y = 0.0;
    double omega_sq_Y = 0.0;
    double hr_sq_Y = 0.0;
    double hr_sq_X = 0.0;
    double mu_Z = 0.0;
    double sigma_sq_Z = 0.0;
    double lambda_hat = 0.0;  ///< Z = Y + lambda_hat X; equals mu_Z
    /// Whether some Y + lambda X reaches HR^2 = HR^2_X + HR^2_Y (false when mu_Y = 0).
    bool max_hr_attained = false;
    /// The lambda that reaches it, omega_Y^2 / mu_Y.
    std::optional<double> max_hr_lambda;
    /// HR^2_X = 0: the efficient set is the single point Y.
    bool degenerate = false;
};

/// The three numbers that pin down a frontier: mu_Y, omega_Y^2 and HR^2_X.
struct FrontierStats {
    double mu_Y = 0.0;
    double omega_sq_Y = 0.0;
    double hr_sq_X = 0.0;

    double hr_sq_Y() const noexcept { return mu_Y * mu_Y / omega_sq_Y; }
};

struct FrontierCoefficients {
    // (mu, omega): omega^2 = omega_sq_Y + inv_hr_sq_X (mu - mu_Y)^2
    double omega_sq_Y = 0.0;
    double inv_hr_sq_X = 0.0;
    double mu_Y = 0.0;
    // (mu, sigma): sigma^2 = sigma_sq_Z + inv_sr_sq_X (mu - mu_Z)^2
    double sigma_sq_Z = 0.0;
    double inv_sr_sq_X = 0.0;
    double mu_Z = 0.0;
    /// Single-point frontier; the slopes are reported as 0.
    bool degenerate = false;

    double omega_sq(double mu) const noexcept;
    double sigma_sq(double mu) const noexcept;
};

struct FrontierPoint {
    double mu = 0.0;
    double omega = 0.0;
    double sigma = 0.0;
};

struct HansenBoundReport {
    double sum = 0.0;    ///< HR^2_X + HR^2_Y
    double slack = 0.0;  ///< 1 - HR^2_X - HR^2_Y, the squared Hansen ratio of the kernel direction
    bool pass = false;
};

PortfolioY solve_Y(const GramMarket& mkt);

/// Throws ArbitrageDetected when HR^2_X >= 1 - kArbitrageTolerance.
PortfolioX solve_X(const GramMarket& mkt);

PortfolioZ solve_Z(const GramMarket& mkt);

SpecialPortfolios solve_special_portfolios(const GramMarket& mkt);

FrontierStats frontier_stats(const SpecialPortfolios& sp);

/// mu_Z and sigma_Z^2 from the frontier statistics. Throws ArbitrageDetected
/// when 1 - HR^2_X vanishes and InternalInvariant when sigma_Z^2 is
/// negative beyond rounding.
std::pair<double, double> minimum_variance_stats(const FrontierStats& fs);

FrontierCoefficients frontier_coefficients(const FrontierStats& fs);
FrontierCoefficients frontier_coefficients(const SpecialPortfolios& sp);

/// Evaluates both parabolas on the grid. A degenerate frontier yields its
/// single point regardless of the grid.
std::vector<FrontierPoint> frontier_points(const FrontierCoefficients& fc, const std::vector<double>& mu_grid);

HansenBoundReport check_hansen_bound(const SpecialPortfolios& sp);

}  // namespace hansen
