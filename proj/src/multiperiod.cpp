#include "hansen/multiperiod.hpp"

#include <cmath>
#include <string>

#include "hansen/error.hpp"

namespace hansen {

double geometric_sum(double ratio, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidHorizon, "horizon must be at least one period");
    if (ratio == 1.0) return static_cast<double>(n);
    // (1 - r^n) / (1 - r) without cancellation near r = 1.
    if (ratio > 0.0) return -std::expm1(n * std::log1p(ratio - 1.0)) / (1.0 - ratio);
    return (1.0 - std::pow(ratio, n)) / (1.0 - ratio);
}

MultiperiodStats propagate(const FrontierStats& one_period, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidHorizon, "horizon must be at least one period", "n = " + std::to_string(n));
    if (!(one_period.omega_sq_Y > 0.0)) throw Error(ErrorCode::InvalidInput, "omega^2_Y must be positive");
    const double hr_sq_Y = one_period.hr_sq_Y();
    if (one_period.hr_sq_X < 0.0 || one_period.hr_sq_X + hr_sq_Y > 1.0 + kHansenBoundTolerance) {
        throw Error(ErrorCode::InvalidInput, "one-period statistics violate HR^2_X + HR^2_Y <= 1");
    }
    if (n == 1) return {1, one_period.mu_Y, one_period.omega_sq_Y, hr_sq_Y, one_period.hr_sq_X};

    MultiperiodStats mp;
    mp.periods = n;
    mp.mu_Y = std::pow(one_period.mu_Y, n);
    mp.omega_sq_Y = std::pow(one_period.omega_sq_Y, n);
    mp.hr_sq_Y = std::pow(hr_sq_Y, n);
    // 1 - HR_Y^(2n) - slack * S collapses to HR_X^2 * S.
    mp.hr_sq_X = one_period.hr_sq_X * geometric_sum(hr_sq_Y, n);
    return mp;
}

MultiperiodStats propagate(const SpecialPortfolios& one_period, int n) {
    return propagate(frontier_stats(one_period), n);
}

ScenarioTree::ScenarioTree(std::vector<double> probabilities, int periods)
    : probabilities_(std::move(probabilities)), periods_(periods), leaves_(1) {
    if (periods_ < 1) throw Error(ErrorCode::InvalidHorizon, "tree needs at least one period");
    if (probabilities_.empty()) throw Error(ErrorCode::InvalidInput, "tree needs at least one state");
    for (int t = 0; t < periods_; ++t) {
        if (leaves_ > kMaxTreeLeaves / probabilities_.size()) {
            throw Error(ErrorCode::TreeTooLarge, "scenario tree exceeds the leaf cap",
                        std::to_string(probabilities_.size()) + "^" + std::to_string(periods_) + " leaves");
        }
        leaves_ *= probabilities_.size();
    }
}

TreeOracleResult tree_oracle(const GramMarket& one_period, int n) {
    const ScenarioPayoff& states = one_period.reference_states();
    ScenarioTree tree(states.probabilities(), n);
    const SpecialPortfolios sp = solve_special_portfolios(one_period);
    const std::vector<double> y = one_period.payoff(sp.w_Y).values();
    const std::vector<double> x = one_period.payoff(sp.w_X).values();
    const double c = sp.mu_Y / sp.omega_sq_Y;

    CompensatedSum y_first, y_second;
    tree.for_each_leaf([&](std::span<const std::size_t> path, double prob) {
        double prod = 1.0;
        for (std::size_t s : path) prod *= y[s];
        y_first.add(prob * prod);
        y_second.add(prob * prod * prod);
    });
    const double mu_Yn = y_first.value();
    const double omega_sq_Yn = y_second.value();
    const double c_n = mu_Yn / omega_sq_Yn;

    // 1 - X~ - c_n Y~ = sum_j c^(n-j) (1 - X_j - c Y_j) prod_{t>j} Y_t
    CompensatedSum x_first, x_second, mix_first, mix_second;
    tree.for_each_leaf([&](std::span<const std::size_t> path, double prob) {
        double residual = 0.0;
        double tail_product = 1.0;
        double c_power = 1.0;
        for (std::size_t j = path.size(); j-- > 0;) {
            const std::size_t s = path[j];
            residual += c_power * (1.0 - x[s] - c * y[s]) * tail_product;
            tail_product *= y[s];
            c_power *= c;
        }
        const double y_leaf = tail_product;
        const double x_leaf = 1.0 - c_n * y_leaf - residual;
        const double mix = x_leaf + c_n * y_leaf;
        x_first.add(prob * x_leaf);
        x_second.add(prob * x_leaf * x_leaf);
        mix_first.add(prob * mix);
        mix_second.add(prob * mix * mix);
    });

    TreeOracleResult out;
    out.leaves = tree.leaf_count();
    out.mu_X = x_first.value();
    out.omega_sq_X = x_second.value();
    out.mix_mean = mix_first.value();
    out.mix_second_moment = mix_second.value();
    out.stats.periods = n;
    out.stats.mu_Y = mu_Yn;
    out.stats.omega_sq_Y = omega_sq_Yn;
    out.stats.hr_sq_Y = mu_Yn * mu_Yn / omega_sq_Yn;
    out.stats.hr_sq_X = out.omega_sq_X > 1e-24 ? out.mu_X * out.mu_X / out.omega_sq_X : 0.0;
    return out;
}

FrontierCoefficients multiperiod_frontier(const MultiperiodStats& mp) {
    return frontier_coefficients(mp.frontier_stats());
}

}  // namespace hansen
