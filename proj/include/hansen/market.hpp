/**
 * @file market.hpp
 * @brief Markets described by a finite spanning set of payoffs
 *
 * A GramMarket holds the inner products G_ij = <B_i, B_j>, the means
 * m_i = <B_i, I> and the prices p_i = pi(B_i) of n basis payoffs. A weight
 * vector w represents the traded payoff sum_i w_i B_i with cost p^T w.
 *
 * Three builders are provided:
 *  - gram_from_universe: gross returns with mean vector and covariance
 *    matrix, G = Sigma + mu mu^T and unit prices;
 *  - gram_from_scenarios: payoffs on a common finite state space, keeping
 *    the scenario realization so statewise constructions remain possible;
 *  - gram_from_sequence_space: discounted cash-flow sequences with
 *    <V, W> = beta/(1-beta) sum_{n=1..N} beta^n E[v_n w_n].
 */

#pragma once

#include <optional>
#include <vector>

#include "hansen/linalg.hpp"
#include "hansen/moments.hpp"

namespace hansen {

struct AssetUniverse {
    Vector mean_returns;
    Matrix covariance;
};

/// Discounted sequence space truncated at a finite horizon.
///
/// date_probabilities holds the state probabilities of each date (dates are
/// numbered from 1). A single entry is reused for every date.
/// cash_flows[i][d] lists the values of basis element i at date d + 1 on that
/// date's states; dates past the end of cash_flows[i] pay zero.
struct SequenceSpaceSpec {
    double discount = 0.5;
    int horizon = 64;
    std::vector<std::vector<double>> date_probabilities;
    std::vector<std::vector<std::vector<double>>> cash_flows;
};

struct SequenceMetadata {
    double discount = 0.0;
    int horizon = 0;
    /// Raw norm of the constant unit cash flow; the unit element is the
    /// constant flow divided by this number so that <I, I> = 1.
    double unit_norm = 1.0;
    /// Geometric tail beta^(N+1) / (1 - beta) dropped by the truncation.
    double truncation_error = 0.0;
};

class GramMarket {
public:
    /// Throws NotPositiveDefinite, DegeneratePrices (p = 0) or InvalidInput
    /// on size mismatches.
    GramMarket(Matrix gram, Vector means, Vector prices);

    std::size_t size() const noexcept { return static_cast<std::size_t>(means_.size()); }
    const Matrix& gram() const noexcept { return gram_; }
    const Vector& means() const noexcept { return means_; }
    const Vector& prices() const noexcept { return prices_; }
    const SpdFactor& factor() const noexcept { return factor_; }

    bool scenario_backed() const noexcept { return scenario_basis_.has_value(); }
    const std::optional<std::vector<ScenarioPayoff>>& scenario_basis() const noexcept { return scenario_basis_; }
    const std::optional<SequenceMetadata>& sequence() const noexcept { return sequence_; }

    double inner(const Vector& a, const Vector& b) const { return a.dot(gram_ * b); }
    double mean(const Vector& w) const { return means_.dot(w); }
    double cost(const Vector& w) const { return prices_.dot(w); }

    /// G - m m^T, the covariance of the basis when <I, I> = 1.
    Matrix covariance() const { return gram_ - means_ * means_.transpose(); }

    /// Statewise payoff sum_i w_i B_i. Throws NotScenarioBacked.
    ScenarioPayoff payoff(const Vector& w) const;

    /// The states shared by every basis payoff. Throws NotScenarioBacked.
    const ScenarioPayoff& reference_states() const;

private:
    friend GramMarket gram_from_scenarios(std::vector<ScenarioPayoff>, const Vector&);
    friend GramMarket gram_from_sequence_space(const SequenceSpaceSpec&, const Vector&);

    Matrix gram_;
    Vector means_;
    Vector prices_;
    SpdFactor factor_;
    std::optional<std::vector<ScenarioPayoff>> scenario_basis_;
    std::optional<SequenceMetadata> sequence_;
};

/// Throws InvalidInput on shape errors, NotPositiveDefinite when the
/// covariance fails the pivot test.
void validate(const AssetUniverse& u);

GramMarket gram_from_universe(const AssetUniverse& u);

/// Throws StateSpaceMismatch when the payoffs do not share one state space,
/// NotPositiveDefinite for a redundant basis.
GramMarket gram_from_scenarios(std::vector<ScenarioPayoff> basis, const Vector& prices);

/// Throws InvalidBeta unless 0 < beta < 1, InvalidHorizon unless N >= 1.
GramMarket gram_from_sequence_space(const SequenceSpaceSpec& spec, const Vector& prices);

/// Raw sequence-space inner product of two single-element cash-flow
/// streams, before any normalization.
double sequence_inner_product(const SequenceSpaceSpec& spec, std::size_t i, std::size_t j);

}  // namespace hansen
