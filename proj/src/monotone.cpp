#include "hansen/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hansen/error.hpp"
#include "hansen/kernel.hpp"

namespace hansen {

namespace {

struct Atom {
    double value;
    double probability;
};

// Distinct payoff values in ascending order with merged probabilities.
std::vector<Atom> atoms_of(const ScenarioPayoff& w) {
    std::vector<Atom> atoms;
    atoms.reserve(w.size());
    for (const State& s : w.states()) atoms.push_back({s.value, s.probability});
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
    std::vector<Atom> merged;
    for (const Atom& a : atoms) {
        if (!merged.empty() && merged.back().value == a.value) {
            merged.back().probability += a.probability;
        } else {
            merged.push_back(a);
        }
    }
    return merged;
}

struct Candidate {
    double k;
    double hr;
};

double foc_residual(const ScenarioPayoff& w, double k) {
    CompensatedSum first;
    CompensatedSum second;
    for (const State& s : w.states()) {
        if (s.value <= k) {
            first.add(s.probability * s.value);
            second.add(s.probability * s.value * s.value);
        }
    }
    return first.value() - second.value() / k;
}

}  // namespace

MonotoneResult monotone_hansen_ratio(const ScenarioPayoff& w, MonotoneOptions options) {
    const double mu = w.mean();
    if (!(mu > 0.0)) {
        throw Error(ErrorCode::NonPositiveMean, "monotone Hansen ratio needs a positive mean",
                    "mean = " + std::to_string(mu));
    }
    const std::vector<Atom> atoms = atoms_of(w);
    const bool downside = atoms.front().value < 0.0;
    if (!downside && !options.allow_no_downside) {
        throw Error(ErrorCode::NoDownside, "payoff has no downside; the supremum is approached only in the limit");
    }

    const std::size_t K = atoms.size();
    // below[j]: first and second moments over atoms 0..j-1; tail[j]: P(W >= v_j).
    std::vector<double> first(K + 1, 0.0), second(K + 1, 0.0), tail(K + 1, 0.0);
    {
        CompensatedSum a, b;
        for (std::size_t j = 0; j < K; ++j) {
            a.add(atoms[j].probability * atoms[j].value);
            b.add(atoms[j].probability * atoms[j].value * atoms[j].value);
            first[j + 1] = a.value();
            second[j + 1] = b.value();
        }
        CompensatedSum t;
        for (std::size_t j = K; j-- > 0;) {
            t.add(atoms[j].probability);
            tail[j] = t.value();
        }
    }

    const double v_max = atoms.back().value;
    std::vector<Candidate> candidates;
    // Segment j: k in [v_{j-1}, v_j] (v_{-1} = 0); the states v_0..v_{j-1} stay
    // below k and the rest are clipped to k.
    for (std::size_t j = 0; j < K; ++j) {
        const double hi = atoms[j].value;
        if (hi <= 0.0) continue;
        const double lo = j == 0 ? 0.0 : std::max(0.0, atoms[j - 1].value);
        const double A = first[j];
        const double B = second[j];
        const double P = tail[j];
        double k = hi;
        if (A > 0.0) k = std::clamp(B / A, lo, hi);
        if (!(k > 0.0)) continue;
        const double m = A + k * P;
        const double s = B + k * k * P;
        candidates.push_back({k, m / std::sqrt(s)});
    }

    Candidate best = candidates.front();
    for (const Candidate& c : candidates) {
        const double tie = 1e-15 * std::abs(best.hr);
        if (c.hr > best.hr + tie || (std::abs(c.hr - best.hr) <= tie && c.k < best.k)) best = c;
    }

    MonotoneResult r;
    r.no_downside = !downside;
    if (best.k >= v_max * (1.0 - 1e-12)) {
        // Untruncated: the first-order condition is solved by alpha = mu / omega^2.
        r.k_hat = w.second_moment() / mu;
        r.truncated = false;
    } else {
        r.k_hat = best.k;
        r.truncated = true;
    }
    r.alpha_hat = 1.0 / r.k_hat;
    r.mhr = stats(w.truncated(r.k_hat)).hansen;
    if (r.mhr < 1.0) r.msr = hr_to_sr(r.mhr);
    r.foc_residual = foc_residual(w, r.k_hat);

    const double scale = w.expectation([](double v) { return std::abs(v); });
    if (std::abs(r.foc_residual) > 1e-9 * scale) {
        throw Error(ErrorCode::InternalInvariant, "first-order condition fails at the returned threshold",
                    "residual = " + std::to_string(r.foc_residual));
    }
    return r;
}

std::optional<double> monotone_sharpe_ratio(const ScenarioPayoff& w, MonotoneOptions options) {
    return monotone_hansen_ratio(w, options).msr;
}

double monotonized_utility(double x) {
    const double c = std::min(x, 1.0);
    return c - 0.5 * c * c;
}

double monotonized_expected_utility(const ScenarioPayoff& w) {
    return w.expectation([](double v) { return monotonized_utility(v); });
}

namespace {

// Columns span {w : p^T w = 0} and are orthonormal in the G inner product.
Matrix zero_cost_basis(const GramMarket& mkt) {
    const auto n = static_cast<Eigen::Index>(mkt.size());
    if (n < 2) return Matrix(n, 0);
    Eigen::HouseholderQR<Matrix> qr(mkt.prices());
    const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix complement = q.rightCols(n - 1);
    const Matrix reduced = complement.transpose() * mkt.gram() * complement;
    Eigen::LLT<Matrix> llt(reduced);
    // E = C L^{-T} gives E^T G E = I.
    const Matrix l_inv_t = llt.matrixU().solve(Matrix::Identity(n - 1, n - 1));
    return complement * l_inv_t;
}

// MHR^2 of the better of W and -W; 0 when the mean vanishes.
double direction_score(const GramMarket& mkt, const Vector& weights) {
    ScenarioPayoff w = mkt.payoff(weights);
    double mu = w.mean();
    if (mu < 0.0) {
        w = w.scaled(-1.0);
        mu = -mu;
    }
    if (!(mu > 1e-14)) return 0.0;
    const MonotoneResult r = monotone_hansen_ratio(w, {.allow_no_downside = true});
    return r.mhr * r.mhr;
}

}  // namespace

MonotoneHJReport monotone_hj_bound(const GramMarket& mkt, const ScenarioPayoff& m, MonotoneHJOptions options) {
    const ScenarioPayoff& states = mkt.reference_states();
    if (!m.same_state_space(states)) {
        throw Error(ErrorCode::StateSpaceMismatch, "kernel is not defined on the market's states");
    }
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (m.value(s) < 0.0) {
            throw Error(ErrorCode::NegativeKernel, "kernel must be non-negative in every state",
                        "state " + std::to_string(s));
        }
    }
    const double err = pricing_error(m, mkt);
    if (err > kKernelPricingTolerance * mkt.prices().norm()) {
        throw Error(ErrorCode::NotAKernel, "candidate kernel misprices the market",
                    "max pricing error = " + std::to_string(err));
    }

    MonotoneHJReport r;
    const Matrix basis = zero_cost_basis(mkt);
    const auto d = basis.cols();
    double best = 0.0;
    Vector best_u;

    auto consider = [&](const Vector& u) {
        const double score = direction_score(mkt, basis * u);
        ++r.directions_evaluated;
        if (score > best || best_u.size() == 0) {
            best = score;
            best_u = u;
        }
        return score;
    };

    if (d == 1) {
        consider(Vector::Ones(1));
    } else if (d == 2) {
        const std::size_t count = std::max<std::size_t>(options.directions, 2);
        for (std::size_t i = 0; i < count; ++i) {
            const double angle = std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
            consider(Vector{{std::cos(angle), std::sin(angle)}});
        }
    } else if (d > 2) {
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> normal;
        for (std::size_t i = 0; i < options.directions; ++i) {
            Vector u(d);
            for (Eigen::Index k = 0; k < d; ++k) u[k] = normal(rng);
            consider(u.normalized());
        }
    }

    // Pattern search around the best grid direction.
    if (d >= 2) {
        double step = std::numbers::pi / static_cast<double>(std::max<std::size_t>(options.directions, 2));
        if (d > 2) step = 0.5;
        for (int it = 0; it < options.refinement_steps && step > 1e-12; ++it) {
            bool improved = false;
            for (Eigen::Index k = 0; k < d && !improved; ++k) {
                for (double sign : {1.0, -1.0}) {
                    Vector trial = best_u;
                    trial[k] += sign * step;
                    const double before = best;
                    consider(trial.normalized());
                    if (best > before) {
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }

    r.sup_mhr_sq = best;
    if (best_u.size() > 0) r.best_weights = basis * best_u;
    if (r.sup_mhr_sq < 1.0) r.sup_msr_sq = r.sup_mhr_sq / (1.0 - r.sup_mhr_sq);

    const RatioStats ms = stats(m);
    r.hr_sq_m = ms.hansen_sq();
    r.hr_bound = 1.0 - r.hr_sq_m;
    r.var_over_mean_sq = ms.variance / (ms.mean * ms.mean);
    r.hr_pass = r.sup_mhr_sq <= r.hr_bound + kKernelBoundTolerance;
    r.variance_pass = r.sup_msr_sq.has_value() &&
                      r.var_over_mean_sq >= *r.sup_msr_sq - kKernelBoundTolerance * std::max(1.0, *r.sup_msr_sq);
    r.pass = r.hr_pass && r.variance_pass;
    return r;
}

}  // namespace hansen
