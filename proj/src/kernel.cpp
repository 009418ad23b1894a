#include "hansen/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hansen/error.hpp"
#include "hansen/frontier.hpp"

namespace hansen {

KernelFrontier kernel_frontier(const GramMarket& mkt) {
    const ScenarioPayoff& states = mkt.reference_states();
    const SpecialPortfolios sp = solve_special_portfolios(mkt);
    const ScenarioPayoff y = mkt.payoff(sp.w_Y);
    const ScenarioPayoff x = mkt.payoff(sp.w_X);
    const double c = sp.mu_Y / sp.omega_sq_Y;

    std::vector<double> v(states.size());
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = 1.0 - x.value(s) - c * y.value(s);
    const bool dust = std::all_of(v.begin(), v.end(), [](double z) { return std::abs(z) <= 1e-12; });
    if (dust) std::fill(v.begin(), v.end(), 0.0);

    KernelFrontier kf{y.scaled(1.0 / sp.omega_sq_Y), states.with_values(std::move(v)), sp.hr_sq_Y, 0.0, sp.hr_sq_X,
                      std::nullopt};
    // V is the residual of projecting 1, so mu_V = omega_V^2 = HR_V^2.
    kf.hr_sq_V = std::max(0.0, kf.direction.mean());

    const auto& basis = *mkt.scenario_basis();
    const double omega_V = std::sqrt(kf.direction.second_moment());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double scale = std::max(1.0, std::sqrt(basis[i].second_moment()));
        if (std::abs(inner_product(kf.direction, basis[i])) > 1e-10 * scale) {
            throw Error(ErrorCode::InternalInvariant, "kernel direction is not orthogonal to the market",
                        "basis payoff " + std::to_string(i));
        }
    }
    const double expected = 1.0 - sp.hr_sq_X - sp.hr_sq_Y;
    if (std::abs(kf.hr_sq_V - expected) > 1e-10 || std::abs(kf.direction.mean() - omega_V * omega_V) > 1e-10) {
        throw Error(ErrorCode::InternalInvariant, "HR^2_V disagrees with 1 - HR^2_X - HR^2_Y",
                    "HR^2_V = " + std::to_string(kf.hr_sq_V) + ", expected " + std::to_string(expected));
    }
    if (sp.mu_Y != 0.0) kf.optimal_eta = 1.0 / sp.mu_Y;
    return kf;
}

HJBoundReport hj_bounds(const GramMarket& mkt) {
    const PortfolioX x = solve_X(mkt);
    HJBoundReport r;
    r.hr_bound = 1.0 - x.hr_sq;
    r.variance_bound = x.hr_sq / r.hr_bound;
    return r;
}

HJBoundReport hj_bounds(const GramMarket& mkt, std::span<const ScenarioPayoff> kernels) {
    HJBoundReport r = hj_bounds(mkt);
    r.kernels.reserve(kernels.size());
    for (const auto& m : kernels) r.kernels.push_back(check_kernel(m, mkt));
    return r;
}

double pricing_error(const ScenarioPayoff& m, const GramMarket& mkt) {
    const auto& basis = mkt.scenario_basis();
    if (!basis) throw Error(ErrorCode::NotScenarioBacked, "kernel checks need a scenario-backed market");
    double worst = 0.0;
    for (std::size_t i = 0; i < basis->size(); ++i) {
        const double err = inner_product(m, (*basis)[i]) - mkt.prices()[static_cast<Eigen::Index>(i)];
        worst = std::max(worst, std::abs(err));
    }
    return worst;
}

KernelDiagnostics check_kernel(const ScenarioPayoff& m, const GramMarket& mkt) {
    KernelDiagnostics d;
    d.pricing_error = pricing_error(m, mkt);
    if (d.pricing_error > kKernelPricingTolerance * mkt.prices().norm()) {
        throw Error(ErrorCode::NotAKernel, "candidate kernel misprices the market",
                    "max pricing error = " + std::to_string(d.pricing_error));
    }
    const HJBoundReport bounds = hj_bounds(mkt);
    d.hr_bound = bounds.hr_bound;
    d.variance_bound = bounds.variance_bound;

    const RatioStats s = stats(m);
    d.hr_sq_m = s.hansen_sq();
    d.hr_pass = d.hr_sq_m <= d.hr_bound + kKernelBoundTolerance;
    // A mean that is rounding noise relative to the norm counts as zero.
    if (std::abs(s.mean) > kZeroMeanTolerance * std::sqrt(s.second_moment)) {
        d.var_over_mean_sq = s.variance / (s.mean * s.mean);
        d.variance_pass = *d.var_over_mean_sq >= d.variance_bound - kKernelBoundTolerance * std::max(1.0, d.variance_bound);
    }
    d.pass = d.hr_pass && d.variance_pass.value_or(true);
    return d;
}

}  // namespace hansen
