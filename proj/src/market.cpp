#include "hansen/market.hpp"

#include <cmath>
#include <string>

#include "hansen/error.hpp"

namespace hansen {

GramMarket::GramMarket(Matrix gram, Vector means, Vector prices)
    : gram_(std::move(gram)), means_(std::move(means)), prices_(std::move(prices)), factor_(gram_) {
    const auto n = gram_.rows();
    if (means_.size() != n || prices_.size() != n) {
        throw Error(ErrorCode::InvalidInput, "Gram matrix, means and prices differ in dimension");
    }
    if (!means_.allFinite() || !prices_.allFinite()) {
        throw Error(ErrorCode::InvalidInput, "means and prices must be finite");
    }
    if (prices_.cwiseAbs().maxCoeff() == 0.0) {
        throw Error(ErrorCode::DegeneratePrices, "all prices are zero: no fully invested portfolio exists");
    }
}

ScenarioPayoff GramMarket::payoff(const Vector& w) const {
    const auto& basis = reference_states();
    if (static_cast<std::size_t>(w.size()) != size()) {
        throw Error(ErrorCode::InvalidInput, "weight vector does not match the market dimension");
    }
    std::vector<double> values(basis.size());
    for (std::size_t s = 0; s < values.size(); ++s) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < size(); ++i) acc.add(w[static_cast<Eigen::Index>(i)] * (*scenario_basis_)[i].value(s));
        values[s] = acc.value();
    }
    return basis.with_values(std::move(values));
}

const ScenarioPayoff& GramMarket::reference_states() const {
    if (!scenario_basis_) {
        throw Error(ErrorCode::NotScenarioBacked, "operation needs a scenario-backed market");
    }
    return scenario_basis_->front();
}

void validate(const AssetUniverse& u) {
    const auto n = u.mean_returns.size();
    if (n < 1) throw Error(ErrorCode::InvalidInput, "asset universe needs at least one asset");
    if (u.covariance.rows() != n || u.covariance.cols() != n) {
        throw Error(ErrorCode::InvalidInput, "covariance must be n x n",
                    "n = " + std::to_string(n));
    }
    if (!u.mean_returns.allFinite()) throw Error(ErrorCode::InvalidInput, "mean returns must be finite");
    SpdFactor check(u.covariance);
    (void)check;
}

GramMarket gram_from_universe(const AssetUniverse& u) {
    validate(u);
    const auto n = u.mean_returns.size();
    Matrix gram = u.covariance + u.mean_returns * u.mean_returns.transpose();
    return GramMarket(std::move(gram), u.mean_returns, Vector::Ones(n));
}

GramMarket gram_from_scenarios(std::vector<ScenarioPayoff> basis, const Vector& prices) {
    if (basis.empty()) throw Error(ErrorCode::InvalidInput, "scenario market needs at least one basis payoff");
    const auto n = static_cast<Eigen::Index>(basis.size());
    if (prices.size() != n) throw Error(ErrorCode::InvalidInput, "one price per basis payoff is required");
    for (std::size_t i = 1; i < basis.size(); ++i) {
        if (!basis[i].same_state_space(basis.front())) {
            throw Error(ErrorCode::StateSpaceMismatch, "basis payoffs must share one state space",
                        "payoff " + std::to_string(i));
        }
    }
    Matrix gram(n, n);
    Vector means(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& bi = basis[static_cast<std::size_t>(i)];
        means[i] = bi.mean();
        for (Eigen::Index j = 0; j <= i; ++j) {
            gram(i, j) = gram(j, i) = inner_product(bi, basis[static_cast<std::size_t>(j)]);
        }
    }
    GramMarket out(std::move(gram), std::move(means), prices);
    out.scenario_basis_ = std::move(basis);
    return out;
}

namespace {

void validate(const SequenceSpaceSpec& spec) {
    if (!(spec.discount > 0.0 && spec.discount < 1.0)) {
        throw Error(ErrorCode::InvalidBeta, "discount factor must lie in (0, 1)",
                    "beta = " + std::to_string(spec.discount));
    }
    if (spec.horizon < 1) throw Error(ErrorCode::InvalidHorizon, "sequence horizon must be at least 1");
    const auto dates = spec.date_probabilities.size();
    if (dates != 1 && dates != static_cast<std::size_t>(spec.horizon)) {
        throw Error(ErrorCode::InvalidInput, "give state probabilities for one date or for every date");
    }
    for (std::size_t d = 0; d < dates; ++d) {
        std::vector<State> states;
        for (double p : spec.date_probabilities[d]) states.push_back({p, 0.0});
        ScenarioPayoff check(std::move(states));
        (void)check;
    }
    if (spec.cash_flows.empty()) throw Error(ErrorCode::InvalidInput, "sequence market needs at least one basis element");
    for (std::size_t i = 0; i < spec.cash_flows.size(); ++i) {
        const auto& flows = spec.cash_flows[i];
        if (flows.size() > static_cast<std::size_t>(spec.horizon)) {
            throw Error(ErrorCode::InvalidInput, "cash flows extend past the horizon", "element " + std::to_string(i));
        }
        for (std::size_t d = 0; d < flows.size(); ++d) {
            const auto& probs = spec.date_probabilities[dates == 1 ? 0 : d];
            if (flows[d].size() != probs.size()) {
                throw Error(ErrorCode::StateSpaceMismatch, "cash flow does not match the date's states",
                            "element " + std::to_string(i) + ", date " + std::to_string(d + 1));
            }
        }
    }
}

const std::vector<double>& probabilities_at(const SequenceSpaceSpec& spec, std::size_t d) {
    return spec.date_probabilities[spec.date_probabilities.size() == 1 ? 0 : d];
}

// beta/(1-beta) sum_{n=1..N} beta^n E[v_n w_n], where a missing flow is zero
// and a null pointer stands for the constant unit flow.
double discounted_inner(const SequenceSpaceSpec& spec,
                        const std::vector<std::vector<double>>* v,
                        const std::vector<std::vector<double>>* w) {
    const double beta = spec.discount;
    CompensatedSum acc;
    double weight = beta;
    for (std::size_t d = 0; d < static_cast<std::size_t>(spec.horizon); ++d, weight *= beta) {
        const bool v_has = v == nullptr || d < v->size();
        const bool w_has = w == nullptr || d < w->size();
        if (!v_has || !w_has) continue;
        const auto& probs = probabilities_at(spec, d);
        CompensatedSum expectation;
        for (std::size_t s = 0; s < probs.size(); ++s) {
            const double vs = v == nullptr ? 1.0 : (*v)[d][s];
            const double ws = w == nullptr ? 1.0 : (*w)[d][s];
            expectation.add(probs[s] * vs * ws);
        }
        acc.add(weight * expectation.value());
    }
    return beta / (1.0 - beta) * acc.value();
}

}  // namespace

double sequence_inner_product(const SequenceSpaceSpec& spec, std::size_t i, std::size_t j) {
    validate(spec);
    return discounted_inner(spec, &spec.cash_flows.at(i), &spec.cash_flows.at(j));
}

GramMarket gram_from_sequence_space(const SequenceSpaceSpec& spec, const Vector& prices) {
    validate(spec);
    const auto n = static_cast<Eigen::Index>(spec.cash_flows.size());
    if (prices.size() != n) throw Error(ErrorCode::InvalidInput, "one price per basis element is required");

    const double unit_norm = std::sqrt(discounted_inner(spec, nullptr, nullptr));
    Matrix gram(n, n);
    Vector means(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto* bi = &spec.cash_flows[static_cast<std::size_t>(i)];
        means[i] = discounted_inner(spec, bi, nullptr) / unit_norm;
        for (Eigen::Index j = 0; j <= i; ++j) {
            gram(i, j) = gram(j, i) = discounted_inner(spec, bi, &spec.cash_flows[static_cast<std::size_t>(j)]);
        }
    }
    GramMarket out(std::move(gram), std::move(means), prices);
    out.sequence_ = SequenceMetadata{
        spec.discount, spec.horizon, unit_norm,
        std::pow(spec.discount, spec.horizon + 1) / (1.0 - spec.discount)};
    return out;
}

}  // namespace hansen
