#include "hansen/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hansen/error.hpp"

namespace hansen {

namespace {

void validate(const std::vector<State>& states) {
    if (states.empty()) {
        throw Error(ErrorCode::InvalidInput, "scenario payoff needs at least one state");
    }
    CompensatedSum total;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        if (!(s.probability > 0.0 && s.probability <= 1.0)) {
            throw Error(ErrorCode::InvalidProbabilities, "probability must lie in (0, 1]",
                        "state " + std::to_string(i));
        }
        if (!std::isfinite(s.value)) {
            throw Error(ErrorCode::InvalidInput, "payoff value is not finite",
                        "state " + std::to_string(i));
        }
        total.add(s.probability);
    }
    if (std::abs(total.value() - 1.0) > kProbabilityTolerance) {
        throw Error(ErrorCode::InvalidProbabilities, "probabilities do not sum to 1",
                    "sum = " + std::to_string(total.value()));
    }
}

}  // namespace

ScenarioPayoff::ScenarioPayoff(std::vector<State> states) : states_(std::move(states)) {
    validate(states_);
}

ScenarioPayoff::ScenarioPayoff(std::span<const double> probabilities, std::span<const double> values) {
    if (probabilities.size() != values.size()) {
        throw Error(ErrorCode::InvalidInput, "probability and value columns differ in length");
    }
    states_.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) states_.push_back({probabilities[i], values[i]});
    validate(states_);
}

ScenarioPayoff ScenarioPayoff::renormalized(std::vector<State> states) {
    CompensatedSum total;
    for (const auto& s : states) total.add(s.probability);
    const double sum = total.value();
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw Error(ErrorCode::InvalidProbabilities, "cannot renormalize: probabilities sum to a non-positive value");
    }
    for (auto& s : states) s.probability /= sum;
    return ScenarioPayoff(std::move(states));
}

std::vector<double> ScenarioPayoff::probabilities() const {
    std::vector<double> out;
    out.reserve(states_.size());
    for (const auto& s : states_) out.push_back(s.probability);
    return out;
}

std::vector<double> ScenarioPayoff::values() const {
    std::vector<double> out;
    out.reserve(states_.size());
    for (const auto& s : states_) out.push_back(s.value);
    return out;
}

ScenarioPayoff ScenarioPayoff::with_values(std::vector<double> values) const {
    if (values.size() != states_.size()) {
        throw Error(ErrorCode::InvalidInput, "value vector does not match the state space");
    }
    ScenarioPayoff out = *this;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw Error(ErrorCode::InvalidInput, "payoff value is not finite");
        out.states_[i].value = values[i];
    }
    return out;
}

ScenarioPayoff ScenarioPayoff::truncated(double k) const {
    ScenarioPayoff out = *this;
    for (auto& s : out.states_) s.value = std::min(s.value, k);
    return out;
}

ScenarioPayoff ScenarioPayoff::scaled(double factor) const {
    ScenarioPayoff out = *this;
    for (auto& s : out.states_) s.value *= factor;
    return out;
}

double ScenarioPayoff::mean() const {
    return expectation([](double v) { return v; });
}

double ScenarioPayoff::second_moment() const {
    return expectation([](double v) { return v * v; });
}

bool ScenarioPayoff::same_state_space(const ScenarioPayoff& other) const noexcept {
    if (other.states_.size() != states_.size()) return false;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].probability != other.states_[i].probability) return false;
    }
    return true;
}

double inner_product(const ScenarioPayoff& a, const ScenarioPayoff& b) {
    if (!a.same_state_space(b)) {
        throw Error(ErrorCode::StateSpaceMismatch, "payoffs are defined on different state spaces");
    }
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc.add(a.probability(i) * a.value(i) * b.value(i));
    return acc.value();
}

ScenarioPayoff add_scaled(const ScenarioPayoff& a, double factor, const ScenarioPayoff& b) {
    if (!a.same_state_space(b)) {
        throw Error(ErrorCode::StateSpaceMismatch, "payoffs are defined on different state spaces");
    }
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.value(i) + factor * b.value(i);
    return a.with_values(std::move(out));
}

RatioStats stats(const ScenarioPayoff& w) {
    const auto states = w.states();
    const bool all_zero = std::all_of(states.begin(), states.end(), [](const State& s) { return s.value == 0.0; });
    if (all_zero) throw Error(ErrorCode::ZeroPayoff, "Hansen ratio is undefined for the zero payoff");

    RatioStats out;
    const bool constant = std::all_of(states.begin(), states.end(),
                                      [&](const State& s) { return s.value == states.front().value; });
    if (constant) {
        const double c = states.front().value;
        out.mean = c;
        out.second_moment = c * c;
        out.variance = 0.0;
        out.hansen = c > 0.0 ? 1.0 : -1.0;
        return out;
    }

    out.mean = w.mean();
    out.second_moment = w.second_moment();
    const double mu = out.mean;
    out.variance = w.expectation([mu](double v) { return (v - mu) * (v - mu); });
    out.hansen = std::clamp(mu / std::sqrt(out.second_moment), -1.0, 1.0);
    if (out.variance > 0.0) out.sharpe = mu / std::sqrt(out.variance);
    return out;
}

double hr_to_sr(double hr) {
    if (!(std::abs(hr) < 1.0)) {
        throw Error(ErrorCode::OutOfRange, "Hansen ratio must satisfy |HR| < 1", "hr = " + std::to_string(hr));
    }
    return hr / std::sqrt((1.0 - hr) * (1.0 + hr));
}

double sr_to_hr(double sr) {
    return sr / std::sqrt(1.0 + sr * sr);
}

double quadratic_utility(const ScenarioPayoff& w) {
    return w.expectation([](double v) { return v - 0.5 * v * v; });
}

ScaledUtility optimal_scaled_utility(const ScenarioPayoff& w) {
    const RatioStats s = stats(w);
    if (s.mean == 0.0) return {0.0, 0.0};
    return {0.5 * s.hansen_sq(), s.mean / s.second_moment};
}

OrthogonalSup orthogonal_sum_sup(const ScenarioPayoff& v, const ScenarioPayoff& w) {
    const RatioStats sv = stats(v);
    const RatioStats sw = stats(w);
    const double cross = inner_product(v, w);
    if (std::abs(cross) > 1e-10 * std::sqrt(sv.second_moment * sw.second_moment)) {
        throw Error(ErrorCode::NotOrthogonal, "payoffs are not orthogonal", "E[VW] = " + std::to_string(cross));
    }
    OrthogonalSup out;
    out.value = sv.hansen_sq() + sw.hansen_sq();
    // d/dbeta of (mu_V + beta mu_W)^2 / (omega_V^2 + beta^2 omega_W^2) vanishes here.
    if (sv.mean != 0.0) out.beta = sw.mean * sv.second_moment / (sv.mean * sw.second_moment);
    return out;
}

}  // namespace hansen
