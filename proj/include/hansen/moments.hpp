/**
 * @file moments.hpp
 * @brief Discrete scenario payoffs, their moments and the Hansen/Sharpe ratios
 *
 * A payoff W is described by a finite list of (probability, value) states.
 * The Hansen ratio is the mean over the L2 norm, HR = E[W] / sqrt(E[W^2]),
 * and is tied to the Sharpe ratio by 1 + SR^2 = 1 / (1 - HR^2).
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hansen/summation.hpp"

namespace hansen {

/// Tolerance on |sum of probabilities - 1|.
inline constexpr double kProbabilityTolerance = 1e-12;

struct State {
    double probability;
    double value;
};

/// Finite discrete distribution of a payoff. Immutable once constructed.
class ScenarioPayoff {
public:
    /// Throws InvalidProbabilities unless every probability is in (0, 1] and
    /// they sum to 1 within kProbabilityTolerance; InvalidInput when empty or
    /// a value is not finite.
    explicit ScenarioPayoff(std::vector<State> states);

    ScenarioPayoff(std::span<const double> probabilities, std::span<const double> values);

    /// Divides probabilities by their sum before validating. Only used when
    /// the caller opts in explicitly.
    static ScenarioPayoff renormalized(std::vector<State> states);

    std::size_t size() const noexcept { return states_.size(); }
    std::span<const State> states() const noexcept { return states_; }
    double probability(std::size_t i) const { return states_[i].probability; }
    double value(std::size_t i) const { return states_[i].value; }

    std::vector<double> probabilities() const;
    std::vector<double> values() const;

    /// Same probabilities, new values. Throws InvalidInput on a length mismatch.
    ScenarioPayoff with_values(std::vector<double> values) const;

    /// Statewise W ∧ k.
    ScenarioPayoff truncated(double k) const;

    ScenarioPayoff scaled(double factor) const;

    /// E[f(W)] with compensated summation.
    template <class F>
    double expectation(F&& f) const {
        CompensatedSum acc;
        for (const State& s : states_) acc.add(s.probability * f(s.value));
        return acc.value();
    }

    double mean() const;
    double second_moment() const;

    /// Exact equality of the probability vectors.
    bool same_state_space(const ScenarioPayoff& other) const noexcept;

private:
    std::vector<State> states_;
};

/// E[AB]; throws StateSpaceMismatch when the payoffs live on different states.
double inner_product(const ScenarioPayoff& a, const ScenarioPayoff& b);

/// Statewise a + factor * b.
ScenarioPayoff add_scaled(const ScenarioPayoff& a, double factor, const ScenarioPayoff& b);

struct RatioStats {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
    double hansen = 0.0;
    /// nullopt when the variance is zero: the ratio is infinite with the
    /// sign of the mean.
    std::optional<double> sharpe;

    double hansen_sq() const noexcept { return hansen * hansen; }
    bool risk_free() const noexcept { return variance == 0.0; }
};

/// Moments and ratios. Throws ZeroPayoff when W = 0 in every state.
RatioStats stats(const ScenarioPayoff& w);

/// hr / sqrt(1 - hr^2); OutOfRange unless |hr| < 1.
double hr_to_sr(double hr);

/// sr / sqrt(1 + sr^2)
double sr_to_hr(double sr);

/// E[U(W)] for U(x) = x - x^2/2.
double quadratic_utility(const ScenarioPayoff& w);

struct ScaledUtility {
    double value = 0.0;  ///< max over alpha of E[U(alpha W)] = HR^2 / 2
    double alpha = 0.0;  ///< maximizer mu / omega^2 (0 when mu = 0)
};

ScaledUtility optimal_scaled_utility(const ScenarioPayoff& w);

struct OrthogonalSup {
    double value = 0.0;           ///< sup_beta HR^2(V + beta W) = HR^2_V + HR^2_W
    std::optional<double> beta;   ///< maximizer; nullopt when mu_V = 0 (unattained)
};

/// Supremum of HR^2(V + beta W) over beta for orthogonal V, W.
/// Throws NotOrthogonal when |E[VW]| exceeds 1e-10 * omega_V * omega_W,
/// ZeroPayoff when either payoff vanishes.
OrthogonalSup orthogonal_sum_sup(const ScenarioPayoff& v, const ScenarioPayoff& w);

}  // namespace hansen
